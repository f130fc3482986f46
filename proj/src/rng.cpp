#include "softac/rng.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

namespace softac {

Rng::Rng(std::uint64_t seed) : gen_(seed) {}

double Rng::uniform() {
  // 53 high bits -> double in [0, 1)
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  // Modulo reduction; bias is < n / 2^64, far below anything observable here.
  return gen_() % n;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Eigen::VectorXd Rng::normal_vector(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Eigen::MatrixXd Rng::normal_matrix(int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  // Column-by-column so a matrix draw equals the same count of scalar draws.
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = normal();
  return m;
}

Eigen::VectorXd Rng::uniform_vector(int n, double lo, double hi) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

void Rng::save(std::ostream& out) const {
  out << gen_ << "\n" << (has_spare_ ? 1 : 0) << " ";
  out << std::hexfloat << spare_ << std::defaultfloat << "\n";
}

void Rng::load(std::istream& in) {
  in >> gen_;
  int flag = 0;
  in >> flag;
  has_spare_ = (flag != 0);
  std::string tok;
  in >> tok;
  spare_ = std::strtod(tok.c_str(), nullptr);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace softac
