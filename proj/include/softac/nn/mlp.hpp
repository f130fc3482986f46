#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <vector>

#include "softac/rng.hpp"

namespace softac::nn {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Feedforward network with ReLU hidden layers and a linear output layer.
/// weights[l] maps layer l -> l+1 and has shape sizes[l+1] x sizes[l].
struct MlpNet {
  std::vector<int> layer_sizes;
  std::vector<Mat> weights;
  std::vector<Vec> biases;

  MlpNet() = default;

  /// All-zero parameters with the given architecture.
  static MlpNet zeros(const std::vector<int>& sizes);
  /// Uniform init in +-1/sqrt(fan_in) for weights and biases.
  static MlpNet uniform_init(const std::vector<int>& sizes, Rng& rng);

  int input_dim() const { return layer_sizes.front(); }
  int output_dim() const { return layer_sizes.back(); }
  int layer_count() const { return static_cast<int>(weights.size()); }
  long param_count() const;

  /// Forward pass on a single input. Throws ContractViolation on a
  /// dimension mismatch and NumericsError if the input is non-finite.
  Vec forward(const Vec& input) const;
  /// Forward pass on a batch; columns are samples.
  Mat forward_batch(const Mat& inputs) const;

  /// Flat parameter view in a fixed order: for each layer, the weight
  /// matrix row-major, then the bias. Used by finite differences and
  /// the checkpoint format.
  Vec flatten() const;
  void unflatten(const Vec& flat);
};

/// Per-layer gradients matching an MlpNet's parameter layout.
struct MlpGrads {
  std::vector<Mat> dweights;
  std::vector<Vec> dbiases;

  static MlpGrads zeros_like(const MlpNet& net);
  bool all_finite() const;
  Vec flatten() const;
};

/// Textual parameter file: layer shapes then row-major values, one layer per
/// line, hexfloat so a save/load round trip is bit exact.
void save_mlp(std::ostream& out, const MlpNet& net);
MlpNet load_mlp(std::istream& in);

}  // namespace softac::nn
