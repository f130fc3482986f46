#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <random>

namespace softac {

/// Deterministic random source. All randomness in the project flows through
/// this class: mt19937_64 output is fully specified by the standard, and the
/// uniform/normal mappings below are implemented explicitly so that seeded
/// results are identical on every platform (std::normal_distribution is not
/// portable across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform();
  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n). Requires n >= 1.
  std::uint64_t uniform_index(std::uint64_t n);
  /// Standard normal via Box-Muller (second value of each pair is cached).
  double normal();

  Eigen::VectorXd normal_vector(int n);
  Eigen::MatrixXd normal_matrix(int rows, int cols);
  Eigen::VectorXd uniform_vector(int n, double lo, double hi);

  void save(std::ostream& out) const;
  void load(std::istream& in);

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Derives a child seed from a base seed and stream id (splitmix64 finalizer).
/// Used to give independent runs, batch elements and evaluation episodes their
/// own streams without consuming state from the parent generator.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace softac
