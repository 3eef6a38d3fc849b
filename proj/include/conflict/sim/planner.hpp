#pragma once

#include <vector>

#include "conflict/sim/cost.hpp"
#include "conflict/sim/vehicle.hpp"

namespace conflict::sim {

/// Lateral corridor for one vehicle's center point.
struct RoadSpec {
  LaneFrame frame;
  double half_width = 3.0;
};

/// Horizon, geometry, bounds, and optimizer settings of the joint
/// receding-horizon planner.
struct PlannerConfig {
  double horizon = 4.0;  // seconds
  double dt = 0.2;
  int replan_stride = 2;

  double vehicle_length = 4.6;
  double vehicle_width = 2.0;
  double lane_width = 4.0;
  double speed_limit = 15.0;
  double margin_delta = 0.5;  // ellipse semi-axis a = width + delta
  double margin_eps = 0.5;    // ellipse semi-axis b = length + eps

  double accel_min = -9.0;
  double accel_max = 3.0;
  double omega_max = 0.3490658503988659;  // 20 deg/s heading rate

  // Optimizer: penalty-escalated projected gradient descent over both
  // vehicles' control sequences, gradients by forward differences. The
  // passing-order basins are covered by structured seeds, so the
  // schedule starts stiff and escalates only while violations persist.
  int opt_iterations = 120;       // gradient steps per penalty round
  int penalty_rounds = 3;
  double penalty_initial = 1e4;
  double penalty_growth = 10.0;
  double constraint_tol = 1e-3;
  double gradient_step = 1e-6;
  double control_reg = 1e-4;
  // Constraint tightening applied only inside the planner objective so
  // converged plans clear the nominal bounds instead of grazing them:
  // extra ellipse semi-axis, and a shave off the road and speed bounds.
  double plan_ellipse_margin = 1.0;
  double plan_constraint_margin = 0.05;

  double ellipse_a() const { return vehicle_width + margin_delta; }
  double ellipse_b() const { return vehicle_length + margin_eps; }

  /// Number of control steps; throws if horizon/dt is not integral.
  int horizon_steps() const;
};

/// Nominal separation measure; >= 1 means the centers are outside the
/// ellipse.
double ellipse_value(const VehicleState& a, const VehicleState& b,
                     const PlannerConfig& cfg);

struct PlanAgent {
  VehicleState initial;
  CostSpec cost;
  RoadSpec road;
};

struct PlanResult {
  Trajectory self;   // trajectory of the first agent
  Trajectory other;  // presumed trajectory of the second agent
  double cost = 0.0;           // intention cost J_i at the solution
  double max_violation = 0.0;  // worst ellipse/road/speed violation
  bool converged = false;      // max_violation <= constraint_tol
};

/// Jointly optimizes both agents' control sequences for the objective
/// J_i defined by the two cost specs, subject to the dynamics (exact),
/// control boxes (projection), and penalty-enforced road, speed-limit,
/// and separation-ellipse constraints.
///
/// Without a warm start the optimizer runs from three structured seeds
/// (both hold course / first agent yields / second agent yields) and
/// keeps the best local solution - the joint problem is nonconvex and
/// the seeds sit in the distinct passing-order basins.
///
/// Throws InfeasibleStart when the initial states violate the ellipse.
/// Exhausting the iteration budget with residual violation is reported
/// through converged/max_violation, not an exception.
PlanResult plan_joint(const PlanAgent& agent_i, const PlanAgent& agent_other,
                      const PlannerConfig& cfg,
                      const std::vector<double>* warm_start = nullptr);

/// Flat control vector [a_i..., omega_i..., a_o..., omega_o...] of a
/// solved plan, suitable to warm-start the next replanning cycle after
/// shift_warm_start.
std::vector<double> pack_controls(const PlanResult& result);

/// Drops the first `stride` executed steps and pads by repeating the
/// final control of each sequence.
std::vector<double> shift_warm_start(const std::vector<double>& controls,
                                     int horizon_steps, int stride);

}  // namespace conflict::sim
