#include "conflict/sim/vehicle.hpp"

#include <algorithm>
#include <cmath>

namespace conflict::sim {

double wrap_angle(double theta) {
  constexpr double kPi = 3.141592653589793;
  constexpr double kTwoPi = 2.0 * kPi;
  double t = std::fmod(theta, kTwoPi);
  if (t <= -kPi) t += kTwoPi;
  if (t > kPi) t -= kTwoPi;
  return t;
}

VehicleState step_dynamics(const VehicleState& state, const ControlInput& control,
                           double dt) {
  VehicleState next;
  next.x = state.x + state.v * std::cos(state.theta) * dt;
  next.y = state.y + state.v * std::sin(state.theta) * dt;
  next.v = std::max(state.v + control.a * dt, 0.0);
  next.theta = wrap_angle(state.theta + control.omega * dt);
  return next;
}

double dynamics_residual(const Trajectory& traj, double dt) {
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.controls.size(); ++k) {
    VehicleState expect = step_dynamics(traj.states[k], traj.controls[k], dt);
    const VehicleState& got = traj.states[k + 1];
    worst = std::max({worst, std::abs(expect.x - got.x), std::abs(expect.y - got.y),
                      std::abs(expect.v - got.v),
                      std::abs(wrap_angle(expect.theta - got.theta))});
  }
  return worst;
}

}  // namespace conflict::sim
