#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <string>

namespace softac::envs {

using Vec = Eigen::VectorXd;

struct EnvSpec {
  int state_dim = 0;
  int action_dim = 0;
  Vec action_low;
  Vec action_high;
  int max_episode_steps = 0;
};

struct StepResult {
  Vec next_state;
  double reward = 0.0;
  bool done = false;       // termination; the value target must not bootstrap
  bool truncated = false;  // time limit; the value target keeps bootstrapping
};

/// Episodic continuous-control environment. Dynamics are deterministic;
/// reset is deterministic given the seed. Out-of-bounds actions are clamped
/// and counted (see clamped_action_count).
class Env {
 public:
  virtual ~Env() = default;
  virtual const EnvSpec& spec() const = 0;
  virtual Vec reset(std::uint64_t seed) = 0;
  virtual StepResult step(const Vec& action) = 0;
  virtual long clamped_action_count() const = 0;
};

/// "pendulum" or "pointmass". Throws ContractViolation for unknown names.
std::unique_ptr<Env> make_env(const std::string& name);

}  // namespace softac::envs
