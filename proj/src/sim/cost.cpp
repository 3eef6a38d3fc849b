#include "conflict/sim/cost.hpp"

#include <cmath>

#include "conflict/errors.hpp"

namespace conflict::sim {

double LaneFrame::progress(const VehicleState& s) const {
  return std::cos(angle) * (s.x - ref_x) + std::sin(angle) * (s.y - ref_y);
}

double LaneFrame::lateral(const VehicleState& s) const {
  return -std::sin(angle) * (s.x - ref_x) + std::cos(angle) * (s.y - ref_y);
}

namespace {

double coupling_cost(const VehicleState& self, const VehicleState& opp,
                     const CostSpec& spec, const CostSpec& opp_spec) {
  switch (spec.coupling) {
    case CouplingFeature::None:
      return 0.0;
    case CouplingFeature::GiveWay: {
      double ahead = spec.target_lane.progress(self) -
                     opp_spec.target_lane.progress(opp);
      return std::max(ahead, 0.0);
    }
    case CouplingFeature::Priority: {
      double a = spec.target_lane.angle;
      return std::cos(a) * std::max(opp.x - self.x, 0.0) +
             std::sin(a) * std::max(opp.y - self.y, 0.0);
    }
  }
  return 0.0;
}

}  // namespace

double stage_cost(const VehicleState& self, const VehicleState& opp,
                  const CostSpec& spec, const CostSpec& opp_spec) {
  double lat = spec.target_lane.lateral(self);
  double dv = self.v - spec.speed_target;
  double cost = spec.w_lane * lat * lat + spec.w_speed * dv * dv;
  if (spec.w_giveway != 0.0) {
    cost += spec.w_giveway * coupling_cost(self, opp, spec, opp_spec);
  }
  if (spec.w_progress != 0.0) {
    double remaining = spec.goal_progress - spec.target_lane.progress(self);
    cost += spec.w_progress * std::max(remaining, 0.0);
  }
  return cost;
}

double evaluate_cost(const Trajectory& traj_i, const Trajectory& traj_other,
                     const CostSpec& spec_i, const CostSpec& spec_other) {
  if (traj_i.states.size() != traj_other.states.size()) {
    throw LengthMismatch("trajectories must have the same number of states");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < traj_i.states.size(); ++k) {
    total += stage_cost(traj_i.states[k], traj_other.states[k], spec_i, spec_other);
    total += stage_cost(traj_other.states[k], traj_i.states[k], spec_other, spec_i);
  }
  return total;
}

}  // namespace conflict::sim
