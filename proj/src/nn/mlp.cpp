#include "softac/nn/mlp.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "softac/errors.hpp"

namespace softac::nn {

namespace {
void check_sizes(const std::vector<int>& sizes) {
  if (sizes.size() < 2) throw ContractViolation("MlpNet needs at least input and output sizes");
  for (int s : sizes)
    if (s <= 0) throw ContractViolation("MlpNet layer sizes must be positive");
}
}  // namespace

MlpNet MlpNet::zeros(const std::vector<int>& sizes) {
  check_sizes(sizes);
  MlpNet net;
  net.layer_sizes = sizes;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    net.weights.push_back(Mat::Zero(sizes[l + 1], sizes[l]));
    net.biases.push_back(Vec::Zero(sizes[l + 1]));
  }
  return net;
}

MlpNet MlpNet::uniform_init(const std::vector<int>& sizes, Rng& rng) {
  MlpNet net = zeros(sizes);
  for (int l = 0; l < net.layer_count(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(sizes[l]));
    Mat& w = net.weights[l];
    for (int r = 0; r < w.rows(); ++r)
      for (int c = 0; c < w.cols(); ++c) w(r, c) = rng.uniform(-bound, bound);
    Vec& b = net.biases[l];
    for (int r = 0; r < b.size(); ++r) b[r] = rng.uniform(-bound, bound);
  }
  return net;
}

long MlpNet::param_count() const {
  long n = 0;
  for (int l = 0; l < layer_count(); ++l) n += weights[l].size() + biases[l].size();
  return n;
}

Vec MlpNet::forward(const Vec& input) const {
  Mat out = forward_batch(input);
  return out.col(0);
}

Mat MlpNet::forward_batch(const Mat& inputs) const {
  if (inputs.rows() != input_dim())
    throw ContractViolation("forward: input has " + std::to_string(inputs.rows()) +
                            " rows, net expects " + std::to_string(input_dim()));
  if (!inputs.allFinite()) throw NumericsError("forward: non-finite input");
  Mat x = inputs;
  for (int l = 0; l < layer_count(); ++l) {
    x = (weights[l] * x).colwise() + biases[l];
    if (l + 1 < layer_count()) x = x.cwiseMax(0.0);
  }
  return x;
}

Vec MlpNet::flatten() const {
  Vec flat(param_count());
  long k = 0;
  for (int l = 0; l < layer_count(); ++l) {
    const Mat& w = weights[l];
    for (int r = 0; r < w.rows(); ++r)
      for (int c = 0; c < w.cols(); ++c) flat[k++] = w(r, c);
    for (int r = 0; r < biases[l].size(); ++r) flat[k++] = biases[l][r];
  }
  return flat;
}

void MlpNet::unflatten(const Vec& flat) {
  if (flat.size() != param_count()) throw ContractViolation("unflatten: size mismatch");
  long k = 0;
  for (int l = 0; l < layer_count(); ++l) {
    Mat& w = weights[l];
    for (int r = 0; r < w.rows(); ++r)
      for (int c = 0; c < w.cols(); ++c) w(r, c) = flat[k++];
    for (int r = 0; r < biases[l].size(); ++r) biases[l][r] = flat[k++];
  }
}

MlpGrads MlpGrads::zeros_like(const MlpNet& net) {
  MlpGrads g;
  for (int l = 0; l < net.layer_count(); ++l) {
    g.dweights.push_back(Mat::Zero(net.weights[l].rows(), net.weights[l].cols()));
    g.dbiases.push_back(Vec::Zero(net.biases[l].size()));
  }
  return g;
}

bool MlpGrads::all_finite() const {
  for (const Mat& m : dweights)
    if (!m.allFinite()) return false;
  for (const Vec& v : dbiases)
    if (!v.allFinite()) return false;
  return true;
}

Vec MlpGrads::flatten() const {
  long n = 0;
  for (std::size_t l = 0; l < dweights.size(); ++l) n += dweights[l].size() + dbiases[l].size();
  Vec flat(n);
  long k = 0;
  for (std::size_t l = 0; l < dweights.size(); ++l) {
    const Mat& w = dweights[l];
    for (int r = 0; r < w.rows(); ++r)
      for (int c = 0; c < w.cols(); ++c) flat[k++] = w(r, c);
    for (int r = 0; r < dbiases[l].size(); ++r) flat[k++] = dbiases[l][r];
  }
  return flat;
}

void save_mlp(std::ostream& out, const MlpNet& net) {
  out << "mlp";
  for (int s : net.layer_sizes) out << " " << s;
  out << "\n";
  out << std::hexfloat;
  for (int l = 0; l < net.layer_count(); ++l) {
    const Mat& w = net.weights[l];
    out << "W" << l;
    for (int r = 0; r < w.rows(); ++r)
      for (int c = 0; c < w.cols(); ++c) out << " " << w(r, c);
    out << "\n";
    out << "b" << l;
    for (int r = 0; r < net.biases[l].size(); ++r) out << " " << net.biases[l][r];
    out << "\n";
  }
  out << std::defaultfloat;
}

namespace {
double parse_double(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) throw ContractViolation("mlp file: truncated values");
  return std::strtod(tok.c_str(), nullptr);
}
}  // namespace

MlpNet load_mlp(std::istream& in) {
  std::string tag;
  if (!(in >> tag) || tag != "mlp") throw ContractViolation("mlp file: bad header");
  std::string line;
  std::getline(in, line);
  std::istringstream sizes_in(line);
  std::vector<int> sizes;
  int s;
  while (sizes_in >> s) sizes.push_back(s);
  MlpNet net = MlpNet::zeros(sizes);
  for (int l = 0; l < net.layer_count(); ++l) {
    if (!(in >> tag) || tag != "W" + std::to_string(l))
      throw ContractViolation("mlp file: expected W" + std::to_string(l));
    Mat& w = net.weights[l];
    for (int r = 0; r < w.rows(); ++r)
      for (int c = 0; c < w.cols(); ++c) w(r, c) = parse_double(in);
    if (!(in >> tag) || tag != "b" + std::to_string(l))
      throw ContractViolation("mlp file: expected b" + std::to_string(l));
    for (int r = 0; r < net.biases[l].size(); ++r) net.biases[l][r] = parse_double(in);
  }
  return net;
}

}  // namespace softac::nn
