#pragma once

#include <string>

#include "conflict/sim/vehicle.hpp"

namespace conflict::sim {

/// A lane center line: a reference point plus the lane direction.
struct LaneFrame {
  double ref_x = 0.0;
  double ref_y = 0.0;
  double angle = 0.0;  // radians, direction of travel

  /// Along-lane coordinate of a position relative to the reference point.
  double progress(const VehicleState& s) const;
  /// Signed perpendicular offset from the center line.
  double lateral(const VehicleState& s) const;
};

/// Which coupled feature an intention activates.
///   GiveWay  penalizes being ahead of the opponent, each vehicle
///            measured along its own lane: max(prog_self - prog_other, 0).
///   Priority penalizes being behind the opponent along the lane
///            direction: cos(aL) max(x_o - x_i, 0) + sin(aL) max(y_o - y_i, 0).
enum class CouplingFeature { None, GiveWay, Priority };

/// Cost profile of one intention. Weights of unused features are zero;
/// features an intention relies on carry strictly positive weight.
struct CostSpec {
  std::string intention;
  LaneFrame target_lane;
  double w_lane = 1.0;
  double w_speed = 0.5;
  double w_giveway = 1.0;
  double w_progress = 0.0;
  double speed_target = 15.0;
  CouplingFeature coupling = CouplingFeature::None;
  double goal_progress = 0.0;  // progress feature: max(goal - prog, 0)
};

/// Per-state cost of one agent against one opponent state.
double stage_cost(const VehicleState& self, const VehicleState& opp,
                  const CostSpec& spec, const CostSpec& opp_spec);

/// Joint objective J_i = J_{a_i}(traj_i | traj_other) +
/// J_{a_-i}(traj_other | traj_i): the sum over all states of both agents'
/// intention costs. Throws LengthMismatch when state counts differ.
double evaluate_cost(const Trajectory& traj_i, const Trajectory& traj_other,
                     const CostSpec& spec_i, const CostSpec& spec_other);

}  // namespace conflict::sim
