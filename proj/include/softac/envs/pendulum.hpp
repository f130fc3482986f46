#pragma once

#include "softac/envs/env.hpp"

namespace softac::envs {

/// Torque-limited pendulum swing-up. Pole angle theta is measured from
/// upright, wrapped to [-pi, pi); the observation is (cos theta, sin theta,
/// theta_dot).
///
/// Dynamics (semi-implicit Euler, dt = 0.05):
///   theta_ddot = (3g / 2l) sin(theta) + (3 / ml^2) u,  g = 10, m = 1, l = 1
/// with torque limit +-2 and velocity clamp +-8. Per-step reward is
///   -(theta^2 + 0.1 theta_dot^2 + 0.001 u^2)
/// evaluated on the pre-step state, so it is <= 0 with equality only at the
/// upright rest state under zero torque. Episodes only truncate (200 steps);
/// there is no terminal state.
///
/// reset(seed) draws theta uniform in [-pi, pi), then theta_dot uniform in
/// [-1, 1].
class Pendulum final : public Env {
 public:
  Pendulum();
  const EnvSpec& spec() const override { return spec_; }
  Vec reset(std::uint64_t seed) override;
  StepResult step(const Vec& action) override;
  long clamped_action_count() const override { return clamped_; }

  /// Places the pendulum in an exact state (step counter restarts).
  void set_state(double theta, double theta_dot);
  double theta() const { return theta_; }
  double theta_dot() const { return theta_dot_; }

  /// Total mechanical energy of the current state (rod about its pivot):
  /// theta_dot^2 / 6 + 5 cos(theta) with the constants above.
  double energy() const;

  static constexpr double kGravity = 10.0;
  static constexpr double kMass = 1.0;
  static constexpr double kLength = 1.0;
  static constexpr double kDt = 0.05;
  static constexpr double kMaxTorque = 2.0;
  static constexpr double kMaxSpeed = 8.0;

 private:
  Vec observation() const;

  EnvSpec spec_;
  double theta_ = 0.0;
  double theta_dot_ = 0.0;
  int steps_ = 0;
  long clamped_ = 0;
};

}  // namespace softac::envs
