#pragma once

#include "softac/nn/mlp.hpp"

namespace softac::nn {

struct AdamConfig {
  double learning_rate = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// First/second moment estimates per parameter plus the shared step count.
struct AdamState {
  AdamConfig config;
  long step_count = 0;
  std::vector<Mat> m_weights, v_weights;
  std::vector<Vec> m_biases, v_biases;

  static AdamState zeros_like(const MlpNet& net, const AdamConfig& config);
};

/// One Adam update with bias correction. Throws NumericsError on non-finite
/// gradients without touching the parameters or the state.
void adam_step(MlpNet& net, const MlpGrads& grads, AdamState& state);

}  // namespace softac::nn
