#pragma once

#include "softac/envs/env.hpp"

namespace softac::envs {

/// Planar double-integrator reacher. State is (px, py, vx, vy); the goal is
/// the origin. Actions are accelerations clamped to +-1 per axis.
///
/// Dynamics (semi-implicit Euler, dt = 0.1): v += u dt (clamped to +-2),
/// p += v dt. Per-step reward is -(|p - goal|^2 + 0.01 |u|^2) on the
/// pre-step position. The episode terminates (done) when the post-step
/// position is within the goal radius 0.05, and truncates at 100 steps.
///
/// reset(seed) draws the position uniform in [-1, 1]^2, redrawing while it
/// lies within twice the goal radius so episodes never start solved;
/// velocity starts at zero.
class PointMass final : public Env {
 public:
  PointMass();
  const EnvSpec& spec() const override { return spec_; }
  Vec reset(std::uint64_t seed) override;
  StepResult step(const Vec& action) override;
  long clamped_action_count() const override { return clamped_; }

  /// Places the mass in an exact state (step counter restarts).
  void set_state(const Eigen::Vector2d& pos, const Eigen::Vector2d& vel);

  static constexpr double kDt = 0.1;
  static constexpr double kMaxAccel = 1.0;
  static constexpr double kMaxSpeed = 2.0;
  static constexpr double kGoalRadius = 0.05;

 private:
  Vec observation() const;

  EnvSpec spec_;
  Eigen::Vector2d pos_{0.0, 0.0};
  Eigen::Vector2d vel_{0.0, 0.0};
  int steps_ = 0;
  long clamped_ = 0;
};

}  // namespace softac::envs
