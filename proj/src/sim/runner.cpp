#include "conflict/sim/runner.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

namespace conflict::sim {

namespace {

// Start of the final stretch over which the check holds, as a step index;
// requires the check to hold at the last recorded state.
int final_streak_start(const Trajectory& self, const Trajectory& opp,
                       const CompletionCheck& check) {
  int last = static_cast<int>(self.states.size()) - 1;
  int start = last;
  for (int k = last - 1; k >= 1; --k) {
    if (!check(self.states[k], opp.states[k])) break;
    start = k;
  }
  return start;
}

}  // namespace

SimOutcome run_receding_horizon(const VehicleState& init_row,
                                const VehicleState& init_col,
                                const AgentBelief& belief_row,
                                const AgentBelief& belief_col,
                                const RoadSpec& road_row, const RoadSpec& road_col,
                                const PlannerConfig& cfg, double max_time,
                                const CompletionCheck& check_row,
                                const CompletionCheck& check_col) {
  if (!(max_time > 0.0)) throw std::invalid_argument("max_time must be positive");
  const int total_steps = static_cast<int>(std::llround(max_time / cfg.dt));
  const int H = cfg.horizon_steps();

  SimOutcome out;
  out.executed_row.states.push_back(init_row);
  out.executed_col.states.push_back(init_col);

  VehicleState row = init_row;
  VehicleState col = init_col;
  if (ellipse_value(row, col, cfg) < 1.0) {
    out.collided = true;
  }

  std::vector<double> warm_row, warm_col;
  int step = 0;
  bool done = out.collided;

  while (!done && step < total_steps) {
    PlanResult plan_row, plan_col;
    try {
      plan_row = plan_joint({row, belief_row.own, road_row},
                            {col, belief_row.other, road_col}, cfg,
                            warm_row.empty() ? nullptr : &warm_row);
      plan_col = plan_joint({col, belief_col.own, road_col},
                            {row, belief_col.other, road_row}, cfg,
                            warm_col.empty() ? nullptr : &warm_col);
    } catch (const std::exception&) {
      out.planner_failed = true;
      break;
    }
    if (!plan_row.converged || !plan_col.converged) {
      out.planner_failed = true;
      break;
    }
    warm_row = shift_warm_start(pack_controls(plan_row), H, cfg.replan_stride);
    warm_col = shift_warm_start(pack_controls(plan_col), H, cfg.replan_stride);

    for (int s = 0; s < cfg.replan_stride && step < total_steps; ++s) {
      ControlInput u_row = plan_row.self.controls[s];
      ControlInput u_col = plan_col.self.controls[s];
      row = step_dynamics(row, u_row, cfg.dt);
      col = step_dynamics(col, u_col, cfg.dt);
      out.executed_row.controls.push_back(u_row);
      out.executed_row.states.push_back(row);
      out.executed_col.controls.push_back(u_col);
      out.executed_col.states.push_back(col);
      ++step;

      if (ellipse_value(row, col, cfg) < 1.0) {
        out.collided = true;
        done = true;
        break;
      }
      if (check_row(row, col) && check_col(col, row)) {
        out.completed = true;
        done = true;
        break;
      }
    }
  }

  if (out.completed && !out.collided) {
    out.completion_time_row =
        final_streak_start(out.executed_row, out.executed_col, check_row) * cfg.dt;
    out.completion_time_col =
        final_streak_start(out.executed_col, out.executed_row, check_col) * cfg.dt;
  } else {
    out.completed = false;
    out.completion_time_row = max_time;
    out.completion_time_col = max_time;
  }
  return out;
}

}  // namespace conflict::sim
