#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <vector>

#include "softac/rng.hpp"

namespace softac::replay {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// One stored interaction. The action is the squashed, environment-scale
/// action that was executed; the reward has the configured reward scale
/// already applied; done marks termination only — time-limit truncations are
/// stored with done = false so the value bootstrap stays active.
struct Transition {
  Vec state;
  Vec action;
  double reward = 0.0;
  Vec next_state;
  bool done = false;
};

/// Sampled minibatch in column-major layout: column j of each matrix belongs
/// to the j-th sampled transition.
struct Batch {
  Mat states;
  Mat actions;
  Vec rewards;
  Mat next_states;
  Vec done;  // 1.0 where terminal, else 0.0

  int size() const { return static_cast<int>(states.cols()); }
};

/// Fixed-capacity FIFO ring with uniform with-replacement sampling.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(const Transition& t);
  /// Uniform with replacement; deterministic given the rng state.
  /// Throws ContractViolation when empty.
  Batch sample(int batch_size, Rng& rng) const;

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  const Transition& at(std::size_t logical_index) const;  // 0 = oldest

  /// Debug dump, one transition per line:
  /// index | state... | action... | reward | next_state... | done
  void dump(std::ostream& out) const;

 private:
  std::size_t capacity_;
  std::vector<Transition> storage_;
  std::size_t size_ = 0;
  std::size_t write_index_ = 0;
};

}  // namespace softac::replay
