#pragma once

#include <string>
#include <utility>
#include <vector>

#include "conflict/game.hpp"
#include "conflict/sim/runner.hpp"

namespace conflict::sim {

enum class ScenarioKind { LaneChange, Intersection };
enum class Condition { AgreeRowLeads, AgreeColLeads, BothAssumeLead, BothAssumeFollow };

ScenarioKind scenario_from_name(const std::string& name);
Condition condition_from_name(const std::string& name);
std::string to_string(ScenarioKind kind);
std::string to_string(Condition condition);

/// The 2x2 matrix game the scenario is played on: lane change with row
/// actions {LCB, LCA} and column actions {GW, C}; intersection with
/// {GW, C} for both players. Anti-diagonal payoffs (1,0)/(0,1), diagonal
/// cells the mutual -inf sentinel.
BimatrixGame scenario_game(ScenarioKind kind);

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::LaneChange;
  Condition condition = Condition::AgreeRowLeads;
  double offset_row = 0.0;  // meters along the row agent's lane
  double offset_col = 0.0;
  PlannerConfig planner;

  double max_time = 10.0;  // doubles as the failure sentinel
  double max_offset = 6.9;

  // Intention feature weights, shared by both agents. The intersection
  // coupling weight is far larger: deference has to outweigh the
  // speed-tracking cost of waiting at the box, or no vehicle ever yields.
  double w_lane = 1.0;
  double w_speed = 0.5;
  double w_giveway = 1.0;
  double w_progress = 0.5;
  double w_giveway_intersection = 100.0;

  // Geometry knobs. Lane change: two parallel lanes along +y, the row
  // agent starting in the left lane, target and column agent in the
  // right. Intersection: perpendicular single-lane roads crossing in a
  // box around the origin, both vehicles starting at rest.
  double intersection_start_distance = 20.0;
  double intersection_box_half = 2.0;
  double intersection_omega_max = 0.0;  // turn suppression
  double completion_lateral_tol = 0.5;

  void validate() const;
};

/// Which leader each agent assumes under a condition (row's assumption,
/// column's assumption).
std::pair<PlayerId, PlayerId> condition_to_assumed_leaders(Condition condition);

/// The joint action pair that effectively gets executed: each agent's own
/// component of the Stackelberg equilibrium under its assumed leader.
std::pair<std::string, std::string> condition_to_intentions(ScenarioKind kind,
                                                            Condition condition);

/// Objective test for one agent's intention at an executed state.
/// Lane change: merge intents require the lateral position within the
/// completion tolerance of the target lane center plus the matching
/// ahead (LCA) / behind (LCB) ordering; GW requires the opponent to have
/// ended up ahead; C has no positional objective. Intersection: the
/// vehicle has fully passed the far edge of the intersection box along
/// its lane.
bool check_completion(const ScenarioConfig& cfg, const std::string& intention,
                      PlayerId who, const VehicleState& state,
                      const VehicleState& opponent);

/// Runs one receding-horizon rollout of the configured scenario.
SimOutcome run_scenario(const ScenarioConfig& cfg);

struct SweepEntry {
  double offset_row = 0.0;
  double offset_col = 0.0;
  SimOutcome outcome;
};

struct SweepResult {
  ScenarioKind scenario = ScenarioKind::LaneChange;
  Condition condition = Condition::AgreeRowLeads;
  std::pair<std::string, std::string> intentions;
  std::vector<SweepEntry> entries;
  double average_completion = 0.0;  // mean over max(row, col) per run
};

/// Evenly spaced offsets covering [-max_offset, max_offset] per vehicle
/// (the single sample of a 1-point grid is 0). One rollout per grid
/// point; failures are recorded as sentinel outcomes, never aborting the
/// sweep. Deterministic given (cfg, grid_n, seed).
SweepResult run_sweep(const ScenarioConfig& cfg, int grid_n, unsigned seed);

std::vector<double> sweep_offsets(double max_offset, int grid_n);

}  // namespace conflict::sim
