#pragma once

#include <vector>

namespace conflict::sim {

/// Kinematic bicycle state [x, y, v, theta]; theta wrapped to (-pi, pi].
struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
  double theta = 0.0;
};

/// Linear acceleration and heading rate.
struct ControlInput {
  double a = 0.0;
  double omega = 0.0;
};

/// Wraps an angle to (-pi, pi].
double wrap_angle(double theta);

/// One explicit-Euler step of the kinematic bicycle:
///   x' = x + v cos(theta) dt,  y' = y + v sin(theta) dt,
///   v' = max(v + a dt, 0),     theta' = wrap(theta + omega dt).
/// Velocity is clamped at zero: the vehicles never reverse.
VehicleState step_dynamics(const VehicleState& state, const ControlInput& control,
                           double dt);

/// states.size() == controls.size() + 1; consecutive states satisfy the
/// dynamics step.
struct Trajectory {
  std::vector<VehicleState> states;
  std::vector<ControlInput> controls;

  int steps() const { return static_cast<int>(controls.size()); }
};

/// Largest per-component residual of the dynamics recurrence over the
/// whole trajectory; 0 for an empty or single-state trajectory.
double dynamics_residual(const Trajectory& traj, double dt);

}  // namespace conflict::sim
