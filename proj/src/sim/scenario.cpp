#include "conflict/sim/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace conflict::sim {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

struct AgentGeometry {
  LaneFrame own_lane;     // lane the agent starts in
  LaneFrame target_lane;  // lane its merge intents aim for
  RoadSpec road;
  VehicleState start;
};

struct Geometry {
  AgentGeometry row;
  AgentGeometry col;
};

Geometry build_geometry(const ScenarioConfig& cfg) {
  const PlannerConfig& p = cfg.planner;
  Geometry g;
  if (cfg.scenario == ScenarioKind::LaneChange) {
    double lw = p.lane_width;
    LaneFrame left{0.0, 0.0, kHalfPi};
    LaneFrame right{lw, 0.0, kHalfPi};
    LaneFrame road_center{lw / 2.0, 0.0, kHalfPi};
    double road_half = lw - p.vehicle_width / 2.0;

    g.row.own_lane = left;
    g.row.target_lane = right;  // both merge intents aim at the right lane
    g.row.road = {road_center, road_half};
    g.row.start = {left.ref_x, cfg.offset_row, p.speed_limit, kHalfPi};

    g.col.own_lane = right;
    g.col.target_lane = right;
    g.col.road = {road_center, road_half};
    g.col.start = {right.ref_x, cfg.offset_col, p.speed_limit, kHalfPi};
  } else {
    LaneFrame east{0.0, 0.0, 0.0};     // row agent travels +x
    LaneFrame north{0.0, 0.0, kHalfPi};  // col agent travels +y
    double lane_half = p.lane_width / 2.0 - p.vehicle_width / 2.0;

    g.row.own_lane = east;
    g.row.target_lane = east;
    g.row.road = {east, lane_half};
    g.row.start = {-cfg.intersection_start_distance + cfg.offset_row, 0.0, 0.0, 0.0};

    g.col.own_lane = north;
    g.col.target_lane = north;
    g.col.road = {north, lane_half};
    g.col.start = {0.0, -cfg.intersection_start_distance + cfg.offset_col, 0.0,
                   kHalfPi};
  }
  return g;
}

double crossing_goal(const ScenarioConfig& cfg) {
  return cfg.intersection_box_half + cfg.planner.vehicle_length / 2.0;
}

CostSpec make_cost_spec(const ScenarioConfig& cfg, const std::string& intention,
                        const AgentGeometry& geom) {
  CostSpec spec;
  spec.intention = intention;
  spec.speed_target = cfg.planner.speed_limit;
  spec.w_lane = cfg.w_lane;
  spec.w_speed = cfg.w_speed;
  spec.w_giveway = 0.0;
  spec.w_progress = 0.0;

  if (cfg.scenario == ScenarioKind::LaneChange) {
    spec.target_lane = intention == "LCA" || intention == "LCB"
                           ? geom.target_lane
                           : geom.own_lane;
    if (intention == "LCB" || intention == "GW") {
      spec.coupling = CouplingFeature::GiveWay;
      spec.w_giveway = cfg.w_giveway;
    }
  } else {
    spec.target_lane = geom.own_lane;
    spec.w_progress = cfg.w_progress;
    spec.goal_progress = crossing_goal(cfg);
    spec.w_giveway = cfg.w_giveway_intersection;
    // Proceeding vehicles are penalized for being behind, yielding ones
    // for being through first; the asymmetry decides the crossing order.
    spec.coupling = intention == "C" ? CouplingFeature::Priority
                                     : CouplingFeature::GiveWay;
  }
  return spec;
}

std::pair<std::string, std::string> equilibrium_intentions(
    const BimatrixGame& game, PlayerId leader) {
  Equilibrium eq = solve_stackelberg(game, leader);
  return {game.row_actions()[eq.row_action], game.col_actions()[eq.col_action]};
}

}  // namespace

ScenarioKind scenario_from_name(const std::string& name) {
  if (name == "lane") return ScenarioKind::LaneChange;
  if (name == "intersection") return ScenarioKind::Intersection;
  throw std::invalid_argument("unknown scenario '" + name +
                              "' (expected lane|intersection)");
}

Condition condition_from_name(const std::string& name) {
  if (name == "agree-row") return Condition::AgreeRowLeads;
  if (name == "agree-col") return Condition::AgreeColLeads;
  if (name == "both-lead") return Condition::BothAssumeLead;
  if (name == "both-follow") return Condition::BothAssumeFollow;
  throw std::invalid_argument(
      "unknown condition '" + name +
      "' (expected agree-row|agree-col|both-lead|both-follow)");
}

std::string to_string(ScenarioKind kind) {
  return kind == ScenarioKind::LaneChange ? "lane" : "intersection";
}

std::string to_string(Condition condition) {
  switch (condition) {
    case Condition::AgreeRowLeads: return "agree-row";
    case Condition::AgreeColLeads: return "agree-col";
    case Condition::BothAssumeLead: return "both-lead";
    case Condition::BothAssumeFollow: return "both-follow";
  }
  throw std::logic_error("unreachable");
}

BimatrixGame scenario_game(ScenarioKind kind) {
  RewardPair sentinel{Reward::neg_inf(), Reward::neg_inf()};
  BimatrixGame game = BimatrixGame::make2x2(
      sentinel, {Reward(0.0), Reward(1.0)}, {Reward(1.0), Reward(0.0)}, sentinel);
  if (kind == ScenarioKind::LaneChange) {
    game.set_labels({"LCB", "LCA"}, {"GW", "C"});
  } else {
    game.set_labels({"GW", "C"}, {"GW", "C"});
  }
  return game;
}

void ScenarioConfig::validate() const {
  if (std::abs(offset_row) > max_offset || std::abs(offset_col) > max_offset) {
    throw std::invalid_argument("starting offsets must stay within +-" +
                                std::to_string(max_offset) + " m");
  }
  if (!(max_time > 0.0)) throw std::invalid_argument("max_time must be positive");
  planner.horizon_steps();  // validates horizon/dt
}

std::pair<PlayerId, PlayerId> condition_to_assumed_leaders(Condition condition) {
  switch (condition) {
    case Condition::AgreeRowLeads: return {PlayerId::Row, PlayerId::Row};
    case Condition::AgreeColLeads: return {PlayerId::Col, PlayerId::Col};
    case Condition::BothAssumeLead: return {PlayerId::Row, PlayerId::Col};
    case Condition::BothAssumeFollow: return {PlayerId::Col, PlayerId::Row};
  }
  throw std::logic_error("unreachable");
}

std::pair<std::string, std::string> condition_to_intentions(ScenarioKind kind,
                                                            Condition condition) {
  BimatrixGame game = scenario_game(kind);
  auto [row_assumes, col_assumes] = condition_to_assumed_leaders(condition);
  auto row_view = equilibrium_intentions(game, row_assumes);
  auto col_view = equilibrium_intentions(game, col_assumes);
  return {row_view.first, col_view.second};
}

bool check_completion(const ScenarioConfig& cfg, const std::string& intention,
                      PlayerId who, const VehicleState& state,
                      const VehicleState& opponent) {
  Geometry geom = build_geometry(cfg);
  const AgentGeometry& self = who == PlayerId::Row ? geom.row : geom.col;
  const AgentGeometry& opp = who == PlayerId::Row ? geom.col : geom.row;

  if (cfg.scenario == ScenarioKind::Intersection) {
    return self.own_lane.progress(state) >= crossing_goal(cfg);
  }

  double ahead = self.own_lane.progress(state) - opp.own_lane.progress(opponent);
  if (intention == "LCA" || intention == "LCB") {
    bool in_lane =
        std::abs(self.target_lane.lateral(state)) <= cfg.completion_lateral_tol;
    return in_lane && (intention == "LCA" ? ahead > 0.0 : ahead < 0.0);
  }
  if (intention == "GW") return ahead < 0.0;  // the opponent got ahead
  if (intention == "C") return true;
  throw std::invalid_argument("unknown intention '" + intention + "'");
}

SimOutcome run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  Geometry geom = build_geometry(cfg);
  PlannerConfig planner = cfg.planner;
  if (cfg.scenario == ScenarioKind::Intersection) {
    planner.omega_max = cfg.intersection_omega_max;
  }

  BimatrixGame game = scenario_game(cfg.scenario);
  auto [row_assumes, col_assumes] = condition_to_assumed_leaders(cfg.condition);
  auto row_view = equilibrium_intentions(game, row_assumes);
  auto col_view = equilibrium_intentions(game, col_assumes);

  AgentBelief belief_row{make_cost_spec(cfg, row_view.first, geom.row),
                         make_cost_spec(cfg, row_view.second, geom.col)};
  AgentBelief belief_col{make_cost_spec(cfg, col_view.second, geom.col),
                         make_cost_spec(cfg, col_view.first, geom.row)};

  ScenarioConfig check_cfg = cfg;  // completion uses each agent's own intention
  CompletionCheck check_row = [check_cfg, intent = row_view.first](
                                  const VehicleState& s, const VehicleState& o) {
    return check_completion(check_cfg, intent, PlayerId::Row, s, o);
  };
  CompletionCheck check_col = [check_cfg, intent = col_view.second](
                                  const VehicleState& s, const VehicleState& o) {
    return check_completion(check_cfg, intent, PlayerId::Col, s, o);
  };

  return run_receding_horizon(geom.row.start, geom.col.start, belief_row,
                              belief_col, geom.row.road, geom.col.road, planner,
                              cfg.max_time, check_row, check_col);
}

std::vector<double> sweep_offsets(double max_offset, int grid_n) {
  if (grid_n < 1) throw std::invalid_argument("grid size must be >= 1");
  if (grid_n == 1) return {0.0};
  std::vector<double> out;
  out.reserve(grid_n);
  for (int k = 0; k < grid_n; ++k) {
    out.push_back(-max_offset + 2.0 * max_offset * k / (grid_n - 1));
  }
  return out;
}

SweepResult run_sweep(const ScenarioConfig& cfg, int grid_n, unsigned /*seed*/) {
  SweepResult result;
  result.scenario = cfg.scenario;
  result.condition = cfg.condition;
  result.intentions = condition_to_intentions(cfg.scenario, cfg.condition);

  std::vector<double> offsets = sweep_offsets(cfg.max_offset, grid_n);
  double sum = 0.0;
  for (double off_row : offsets) {
    for (double off_col : offsets) {
      ScenarioConfig run_cfg = cfg;
      run_cfg.offset_row = off_row;
      run_cfg.offset_col = off_col;
      SweepEntry entry;
      entry.offset_row = off_row;
      entry.offset_col = off_col;
      try {
        entry.outcome = run_scenario(run_cfg);
      } catch (const std::exception&) {
        entry.outcome.planner_failed = true;
        entry.outcome.completion_time_row = cfg.max_time;
        entry.outcome.completion_time_col = cfg.max_time;
      }
      sum += std::max(entry.outcome.completion_time_row,
                      entry.outcome.completion_time_col);
      result.entries.push_back(std::move(entry));
    }
  }
  result.average_completion = sum / static_cast<double>(result.entries.size());
  return result;
}

}  // namespace conflict::sim
