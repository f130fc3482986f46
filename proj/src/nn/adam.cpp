#include "softac/nn/adam.hpp"

#include <cmath>

#include "softac/errors.hpp"

namespace softac::nn {

AdamState AdamState::zeros_like(const MlpNet& net, const AdamConfig& config) {
  AdamState s;
  s.config = config;
  for (int l = 0; l < net.layer_count(); ++l) {
    s.m_weights.push_back(Mat::Zero(net.weights[l].rows(), net.weights[l].cols()));
    s.v_weights.push_back(Mat::Zero(net.weights[l].rows(), net.weights[l].cols()));
    s.m_biases.push_back(Vec::Zero(net.biases[l].size()));
    s.v_biases.push_back(Vec::Zero(net.biases[l].size()));
  }
  return s;
}

namespace {
template <typename T>
void update_block(T& param, const T& grad, T& m, T& v, const AdamConfig& c, double bc1, double bc2) {
  m = c.beta1 * m + (1.0 - c.beta1) * grad;
  v = c.beta2 * v.array().matrix() + (1.0 - c.beta2) * grad.cwiseProduct(grad);
  const T m_hat = m / bc1;
  const T v_hat = v / bc2;
  param.array() -= c.learning_rate * m_hat.array() / (v_hat.array().sqrt() + c.epsilon);
}
}  // namespace

void adam_step(MlpNet& net, const MlpGrads& grads, AdamState& state) {
  if (grads.dweights.size() != net.weights.size())
    throw ContractViolation("adam_step: gradient layout mismatch");
  if (!grads.all_finite()) throw NumericsError("adam_step: non-finite gradient, update rejected");
  state.step_count += 1;
  const AdamConfig& c = state.config;
  const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.step_count));
  const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.step_count));
  for (int l = 0; l < net.layer_count(); ++l) {
    update_block(net.weights[l], grads.dweights[l], state.m_weights[l], state.v_weights[l], c, bc1, bc2);
    update_block(net.biases[l], grads.dbiases[l], state.m_biases[l], state.v_biases[l], c, bc1, bc2);
  }
}

}  // namespace softac::nn
