#pragma once

#include <functional>

#include "conflict/sim/planner.hpp"

namespace conflict::sim {

/// One agent's view of the joint intention: the cost spec it executes
/// and the cost spec it attributes to the opponent. Under conflict the
/// two agents hold different views.
struct AgentBelief {
  CostSpec own;
  CostSpec other;
};

/// True when the agent's objective is satisfied at this executed state.
using CompletionCheck =
    std::function<bool(const VehicleState& self, const VehicleState& opponent)>;

struct SimOutcome {
  double completion_time_row = 0.0;  // sentinel (max_time) on failure
  double completion_time_col = 0.0;
  bool collided = false;
  bool completed = false;       // both objectives satisfied in time
  bool planner_failed = false;  // infeasible start or non-convergence
  Trajectory executed_row;
  Trajectory executed_col;
};

/// Receding-horizon rollout: each agent plans the joint problem under its
/// own belief, executes replan_stride steps of its own plan (discarding
/// its prediction of the opponent), and replans from the true states.
/// Terminates when both completion checks pass at the same executed state,
/// on an executed-state ellipse violation (collision), on planner failure,
/// or at max_time. Failed runs carry the max_time sentinel for both
/// completion times; successful runs record the start of each agent's
/// final stretch of satisfied objective.
SimOutcome run_receding_horizon(const VehicleState& init_row,
                                const VehicleState& init_col,
                                const AgentBelief& belief_row,
                                const AgentBelief& belief_col,
                                const RoadSpec& road_row, const RoadSpec& road_col,
                                const PlannerConfig& cfg, double max_time,
                                const CompletionCheck& check_row,
                                const CompletionCheck& check_col);

}  // namespace conflict::sim
