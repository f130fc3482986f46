#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

#include "softac/rng.hpp"

namespace softac::cem {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct CemConfig {
  int sample_count = 100;       // N
  double elite_density = 0.05;  // rho in (0, 1]
  int iterations = 10;          // T
  double initial_deviation = 1.0;  // s, per dimension
  double deviation_floor = 1e-4;   // delta; all components below -> early stop
  bool minimize = true;

  int elite_count() const;
  void validate() const;  // throws ContractViolation
};

struct CemResult {
  Vec best_mean;        // theta_mu after the final iteration
  Vec final_deviation;  // theta_sigma after the final iteration
  int iterations_run = 0;
  std::vector<double> objective_trace;  // best objective per iteration
};

/// Objective evaluated on a whole population at once: candidates are the
/// columns, the result holds one value per column. Single-candidate use is a
/// one-column matrix.
using BatchObjective = std::function<Vec(const Mat&)>;
using PointObjective = std::function<double(const Vec&)>;

/// Gaussian cross-entropy optimization. Per iteration: draw N samples from
/// Normal(theta_mu, diag(theta_sigma)) (sample-major, dimension-minor draw
/// order), rank them by objective (ascending when minimizing, descending
/// otherwise; stable in sample index on ties; non-finite values rank worst),
/// refit theta_mu / theta_sigma to the elite subset's mean and population
/// standard deviation, and stop early once every deviation component falls
/// below the floor. Deterministic given the rng seed.
///
/// Throws NumericsError if an entire population evaluates non-finite.
CemResult cem_optimize(const BatchObjective& objective, const Vec& initial_mean,
                       const CemConfig& config, Rng& rng);

/// Convenience wrapper for scalar objectives.
CemResult cem_optimize_pointwise(const PointObjective& objective, const Vec& initial_mean,
                                 const CemConfig& config, Rng& rng);

/// Independent CEM per batch element, equivalent to sequential cem_optimize
/// calls where element i uses the stream Rng(derive_seed(base_seed, i)).
std::vector<CemResult> cem_optimize_batch(const std::vector<BatchObjective>& objectives,
                                          const std::vector<Vec>& initial_means,
                                          const CemConfig& config, std::uint64_t base_seed);

}  // namespace softac::cem
