#include "softac/envs/env.hpp"

#include <cmath>
#include <numbers>

#include "softac/envs/pendulum.hpp"
#include "softac/envs/pointmass.hpp"
#include "softac/errors.hpp"
#include "softac/rng.hpp"

namespace softac::envs {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_angle(double theta) {
  // Map to [-pi, pi).
  return theta - 2.0 * kPi * std::floor((theta + kPi) / (2.0 * kPi));
}

double clamp_with_count(double x, double lo, double hi, long& counter) {
  if (x < lo || x > hi) {
    ++counter;
    return std::min(hi, std::max(lo, x));
  }
  return x;
}
}  // namespace

Pendulum::Pendulum() {
  spec_.state_dim = 3;
  spec_.action_dim = 1;
  spec_.action_low = Vec::Constant(1, -kMaxTorque);
  spec_.action_high = Vec::Constant(1, kMaxTorque);
  spec_.max_episode_steps = 200;
}

Vec Pendulum::observation() const {
  Vec obs(3);
  obs << std::cos(theta_), std::sin(theta_), theta_dot_;
  return obs;
}

double Pendulum::energy() const {
  // Rod pivoting at one end: I = m l^2 / 3, COM height (l/2) cos(theta).
  const double kinetic = 0.5 * (kMass * kLength * kLength / 3.0) * theta_dot_ * theta_dot_;
  const double potential = kMass * kGravity * (kLength / 2.0) * std::cos(theta_);
  return kinetic + potential;
}

Vec Pendulum::reset(std::uint64_t seed) {
  Rng rng(seed);
  theta_ = rng.uniform(-kPi, kPi);
  theta_dot_ = rng.uniform(-1.0, 1.0);
  steps_ = 0;
  return observation();
}

void Pendulum::set_state(double theta, double theta_dot) {
  theta_ = wrap_angle(theta);
  theta_dot_ = theta_dot;
  steps_ = 0;
}

StepResult Pendulum::step(const Vec& action) {
  if (action.size() != 1) throw ContractViolation("pendulum: action must be 1-dimensional");
  const double u = clamp_with_count(action[0], -kMaxTorque, kMaxTorque, clamped_);

  StepResult out;
  out.reward = -(theta_ * theta_ + 0.1 * theta_dot_ * theta_dot_ + 0.001 * u * u);

  const double accel = (3.0 * kGravity / (2.0 * kLength)) * std::sin(theta_) +
                       (3.0 / (kMass * kLength * kLength)) * u;
  theta_dot_ += accel * kDt;
  theta_dot_ = std::min(kMaxSpeed, std::max(-kMaxSpeed, theta_dot_));
  theta_ = wrap_angle(theta_ + theta_dot_ * kDt);

  ++steps_;
  out.next_state = observation();
  out.done = false;
  out.truncated = steps_ >= spec_.max_episode_steps;
  return out;
}

PointMass::PointMass() {
  spec_.state_dim = 4;
  spec_.action_dim = 2;
  spec_.action_low = Vec::Constant(2, -kMaxAccel);
  spec_.action_high = Vec::Constant(2, kMaxAccel);
  spec_.max_episode_steps = 100;
}

Vec PointMass::observation() const {
  Vec obs(4);
  obs << pos_.x(), pos_.y(), vel_.x(), vel_.y();
  return obs;
}

void PointMass::set_state(const Eigen::Vector2d& pos, const Eigen::Vector2d& vel) {
  pos_ = pos;
  vel_ = vel;
  steps_ = 0;
}

Vec PointMass::reset(std::uint64_t seed) {
  Rng rng(seed);
  do {
    pos_.x() = rng.uniform(-1.0, 1.0);
    pos_.y() = rng.uniform(-1.0, 1.0);
  } while (pos_.norm() <= 2.0 * kGoalRadius);
  vel_.setZero();
  steps_ = 0;
  return observation();
}

StepResult PointMass::step(const Vec& action) {
  if (action.size() != 2) throw ContractViolation("pointmass: action must be 2-dimensional");
  Eigen::Vector2d u;
  u.x() = clamp_with_count(action[0], -kMaxAccel, kMaxAccel, clamped_);
  u.y() = clamp_with_count(action[1], -kMaxAccel, kMaxAccel, clamped_);

  StepResult out;
  out.reward = -(pos_.squaredNorm() + 0.01 * u.squaredNorm());

  vel_ += u * kDt;
  vel_ = vel_.cwiseMax(-kMaxSpeed).cwiseMin(kMaxSpeed);
  pos_ += vel_ * kDt;

  ++steps_;
  out.next_state = observation();
  out.done = pos_.norm() <= kGoalRadius;
  out.truncated = !out.done && steps_ >= spec_.max_episode_steps;
  return out;
}

std::unique_ptr<Env> make_env(const std::string& name) {
  if (name == "pendulum") return std::make_unique<Pendulum>();
  if (name == "pointmass") return std::make_unique<PointMass>();
  throw ContractViolation("unknown environment: " + name + " (expected pendulum or pointmass)");
}

}  // namespace softac::envs
