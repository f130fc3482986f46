#include "softac/cem/cem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "softac/errors.hpp"

namespace softac::cem {

int CemConfig::elite_count() const {
  const int n = static_cast<int>(std::floor(sample_count * elite_density));
  return std::max(1, n);
}

void CemConfig::validate() const {
  if (sample_count < 1) throw ContractViolation("cem: sample_count must be >= 1");
  if (!(elite_density > 0.0 && elite_density <= 1.0))
    throw ContractViolation("cem: elite_density must be in (0, 1]");
  if (iterations < 1) throw ContractViolation("cem: iterations must be >= 1");
  if (!(initial_deviation > 0.0)) throw ContractViolation("cem: initial_deviation must be > 0");
  if (!(deviation_floor >= 0.0 && deviation_floor < initial_deviation))
    throw ContractViolation("cem: need initial_deviation > deviation_floor >= 0");
}

CemResult cem_optimize(const BatchObjective& objective, const Vec& initial_mean,
                       const CemConfig& config, Rng& rng) {
  config.validate();
  if (!initial_mean.allFinite()) throw ContractViolation("cem: initial mean must be finite");

  const int dim = static_cast<int>(initial_mean.size());
  const int n = config.sample_count;
  const int n_elite = config.elite_count();

  Vec mu = initial_mean;
  Vec sigma = Vec::Constant(dim, config.initial_deviation);

  CemResult result;
  result.objective_trace.reserve(config.iterations);

  Mat samples(dim, n);
  std::vector<int> order(n);

  for (int iter = 0; iter < config.iterations; ++iter) {
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < dim; ++k) samples(k, j) = mu[k] + sigma[k] * rng.normal();

    const Vec values = objective(samples);
    if (values.size() != n) throw ContractViolation("cem: objective returned wrong count");

    std::iota(order.begin(), order.end(), 0);
    const bool minimize = config.minimize;
    // Non-finite values rank strictly worse than any finite value; ties keep
    // sample-index order (stable sort).
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const bool bad_a = !std::isfinite(values[a]);
      const bool bad_b = !std::isfinite(values[b]);
      if (bad_a != bad_b) return bad_b;
      if (bad_a) return false;
      return minimize ? values[a] < values[b] : values[a] > values[b];
    });

    if (!std::isfinite(values[order[0]]))
      throw NumericsError("cem: every sample evaluated non-finite");

    result.objective_trace.push_back(values[order[0]]);

    Vec elite_mean = Vec::Zero(dim);
    for (int e = 0; e < n_elite; ++e) elite_mean += samples.col(order[e]);
    elite_mean /= static_cast<double>(n_elite);

    Vec elite_var = Vec::Zero(dim);
    for (int e = 0; e < n_elite; ++e) {
      const Vec d = samples.col(order[e]) - elite_mean;
      elite_var += d.cwiseProduct(d);
    }
    elite_var /= static_cast<double>(n_elite);  // population form; one elite -> 0

    mu = elite_mean;
    sigma = elite_var.cwiseSqrt();
    result.iterations_run = iter + 1;

    if ((sigma.array() < config.deviation_floor).all()) break;
  }

  result.best_mean = mu;
  result.final_deviation = sigma;
  return result;
}

CemResult cem_optimize_pointwise(const PointObjective& objective, const Vec& initial_mean,
                                 const CemConfig& config, Rng& rng) {
  BatchObjective batched = [&objective](const Mat& candidates) {
    Vec values(candidates.cols());
    for (int j = 0; j < candidates.cols(); ++j) values[j] = objective(candidates.col(j));
    return values;
  };
  return cem_optimize(batched, initial_mean, config, rng);
}

std::vector<CemResult> cem_optimize_batch(const std::vector<BatchObjective>& objectives,
                                          const std::vector<Vec>& initial_means,
                                          const CemConfig& config, std::uint64_t base_seed) {
  if (objectives.size() != initial_means.size())
    throw ContractViolation("cem batch: objective/mean count mismatch");
  if (objectives.empty()) throw ContractViolation("cem batch: needs at least one element");
  std::vector<CemResult> results;
  results.reserve(objectives.size());
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    Rng rng(derive_seed(base_seed, i));
    results.push_back(cem_optimize(objectives[i], initial_means[i], config, rng));
  }
  return results;
}

}  // namespace softac::cem
