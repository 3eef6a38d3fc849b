#include "conflict/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <sstream>

#include "conflict/analysis.hpp"
#include "conflict/errors.hpp"
#include "conflict/game.hpp"
#include "conflict/io.hpp"
#include "conflict/sim/scenario.hpp"
#include "conflict/transforms.hpp"

namespace conflict::cli {

namespace {

std::string equilibrium_actions(const BimatrixGame& game, const Equilibrium& eq) {
  return "(" + game.row_actions()[eq.row_action] + "," +
         game.col_actions()[eq.col_action] + ")";
}

std::string reward_str(const Reward& r) {
  return r.is_neg_inf() ? "-inf" : io::fixed6(r.value());
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ParseError("config key '" + key + "': bad number '" + value + "'");
  }
}

void apply_config_file(sim::ScenarioConfig& cfg, const std::string& path) {
  auto kv = io::read_key_values(path);
  sim::PlannerConfig& p = cfg.planner;
  for (const auto& [key, value] : kv) {
    double v = parse_double(key, value);
    if (key == "horizon") p.horizon = v;
    else if (key == "dt") p.dt = v;
    else if (key == "replan_stride") p.replan_stride = static_cast<int>(v);
    else if (key == "vehicle_length") p.vehicle_length = v;
    else if (key == "vehicle_width") p.vehicle_width = v;
    else if (key == "lane_width") p.lane_width = v;
    else if (key == "speed_limit") p.speed_limit = v;
    else if (key == "margin_delta") p.margin_delta = v;
    else if (key == "margin_eps") p.margin_eps = v;
    else if (key == "accel_min") p.accel_min = v;
    else if (key == "accel_max") p.accel_max = v;
    else if (key == "omega_max") p.omega_max = v;
    else if (key == "opt_iterations") p.opt_iterations = static_cast<int>(v);
    else if (key == "penalty_rounds") p.penalty_rounds = static_cast<int>(v);
    else if (key == "penalty_initial") p.penalty_initial = v;
    else if (key == "penalty_growth") p.penalty_growth = v;
    else if (key == "constraint_tol") p.constraint_tol = v;
    else if (key == "gradient_step") p.gradient_step = v;
    else if (key == "control_reg") p.control_reg = v;
    else if (key == "plan_ellipse_margin") p.plan_ellipse_margin = v;
    else if (key == "max_time") cfg.max_time = v;
    else if (key == "max_offset") cfg.max_offset = v;
    else if (key == "w_lane") cfg.w_lane = v;
    else if (key == "w_speed") cfg.w_speed = v;
    else if (key == "w_giveway") cfg.w_giveway = v;
    else if (key == "w_giveway_intersection") cfg.w_giveway_intersection = v;
    else if (key == "w_progress") cfg.w_progress = v;
    else if (key == "intersection_start_distance") cfg.intersection_start_distance = v;
    else if (key == "intersection_box_half") cfg.intersection_box_half = v;
    else if (key == "intersection_omega_max") cfg.intersection_omega_max = v;
    else if (key == "completion_lateral_tol") cfg.completion_lateral_tol = v;
    else throw ParseError("config key '" + key + "' is not recognized");
  }
}

std::string sweep_csv(const sim::SweepResult& sweep) {
  std::ostringstream os;
  os << "offset_row,offset_col,time_row,time_col,collided\n";
  for (const auto& e : sweep.entries) {
    os << io::fixed6(e.offset_row) << ',' << io::fixed6(e.offset_col) << ','
       << io::fixed6(e.outcome.completion_time_row) << ','
       << io::fixed6(e.outcome.completion_time_col) << ','
       << (e.outcome.collided ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string trajectory_csv(const sim::SimOutcome& outcome, double dt) {
  std::ostringstream os;
  os << "t,agent,x,y,v,theta,a,omega\n";
  auto emit = [&](const sim::Trajectory& traj, const char* name) {
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      const sim::VehicleState& s = traj.states[k];
      sim::ControlInput u =
          k < traj.controls.size() ? traj.controls[k] : sim::ControlInput{0.0, 0.0};
      os << io::fixed6(k * dt) << ',' << name << ',' << io::fixed6(s.x) << ','
         << io::fixed6(s.y) << ',' << io::fixed6(s.v) << ',' << io::fixed6(s.theta)
         << ',' << io::fixed6(u.a) << ',' << io::fixed6(u.omega) << '\n';
    }
  };
  emit(outcome.executed_row, "row");
  emit(outcome.executed_col, "col");
  return os.str();
}

void print_summary_header(std::ostream& out, sim::ScenarioKind kind) {
  out << "scenario: " << sim::to_string(kind) << "\n";
  out << "C1 action  C2 action  avg time (s)\n";
}

void print_summary_line(std::ostream& out, const sim::SweepResult& sweep) {
  out << sweep.intentions.first << "  " << sweep.intentions.second << "  "
      << io::fixed6(sweep.average_completion) << "  ["
      << sim::to_string(sweep.condition) << "]\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Stackelberg conflict analysis and two-vehicle simulation"};
  app.require_subcommand(1);

  unsigned seed = 42;
  app.add_option("--seed", seed, "seed for randomized runs")->capture_default_str();

  const std::vector<std::string> model_names{"baseline", "pure", "altruism",
                                             "aug", "svo"};

  std::string model;
  double gap_a = 1.0, gap_b = 1.0;
  std::optional<int> oracle_res;
  int region_res = 100;
  std::string file_out;
  double curve_min = 0.1, curve_max = 10.0;
  int curve_samples = 100;

  CLI::App* cmd_aoc = app.add_subcommand("aoc", "analytic area of conflict");
  cmd_aoc->add_option("--model", model, "reward model")
      ->required()
      ->check(CLI::IsMember(model_names));
  cmd_aoc->add_option("--A", gap_a, "row reward gap")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_aoc->add_option("--B", gap_b, "column reward gap")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_aoc->add_option("--oracle", oracle_res, "grid-oracle resolution")
      ->check(CLI::Range(10, 100000));

  CLI::App* cmd_region =
      app.add_subcommand("region", "rasterize the conflict region (PGM + CSV)");
  cmd_region->add_option("--model", model, "reward model")
      ->required()
      ->check(CLI::IsMember(model_names));
  cmd_region->add_option("--A", gap_a, "row reward gap")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_region->add_option("--B", gap_b, "column reward gap")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_region->add_option("--res", region_res, "cells per side")
      ->required()
      ->check(CLI::Range(1, 10000));
  cmd_region->add_option("--out", file_out, "output PGM path")->required();

  CLI::App* cmd_curve = app.add_subcommand("curve", "AoC as a function of A (CSV)");
  cmd_curve->add_option("--model", model, "reward model")
      ->required()
      ->check(CLI::IsMember(model_names));
  cmd_curve->add_option("--B", gap_b, "column reward gap")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_curve->add_option("--a-min", curve_min, "lowest A")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_curve->add_option("--a-max", curve_max, "highest A")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_curve->add_option("--samples", curve_samples, "sample count")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  cmd_curve->add_option("--out", file_out, "output CSV path")->required();

  std::string game_file, game_leader, game_model = "baseline";
  double alpha1 = 0.0, alpha2 = 0.0;

  CLI::App* cmd_solve =
      app.add_subcommand("game-solve", "solve a matrix game for one leader");
  cmd_solve->add_option("--file", game_file, "game file")->required();
  cmd_solve->add_option("--leader", game_leader, "leader (default: both)")
      ->check(CLI::IsMember({"row", "col"}));
  cmd_solve->add_option("--model", game_model, "reward model applied first")
      ->check(CLI::IsMember(model_names));
  cmd_solve->add_option("--alpha1", alpha1, "row coefficient / angle");
  cmd_solve->add_option("--alpha2", alpha2, "column coefficient / angle");

  CLI::App* cmd_conflict = app.add_subcommand(
      "game-conflict", "compare the two leader assignments of a game");
  cmd_conflict->add_option("--file", game_file, "game file")->required();
  cmd_conflict->add_option("--model", game_model, "reward model applied first")
      ->check(CLI::IsMember(model_names));
  cmd_conflict->add_option("--alpha1", alpha1, "row coefficient / angle");
  cmd_conflict->add_option("--alpha2", alpha2, "column coefficient / angle");

  std::string sim_scenario, sim_condition, sim_config, sim_traj_out;
  int grid_n = 5;

  CLI::App* cmd_sim = app.add_subcommand(
      "simulate", "staggered-start sweep of one leader-assumption condition");
  cmd_sim->add_option("--scenario", sim_scenario, "driving scenario")
      ->required()
      ->check(CLI::IsMember({"lane", "intersection"}));
  cmd_sim->add_option("--condition", sim_condition, "leader-assumption condition")
      ->required()
      ->check(CLI::IsMember({"agree-row", "agree-col", "both-lead", "both-follow"}));
  cmd_sim->add_option("--grid", grid_n, "offsets per vehicle")
      ->check(CLI::Range(1, 51))
      ->capture_default_str();
  cmd_sim->add_option("--out", file_out, "results CSV path")->required();
  cmd_sim->add_option("--config", sim_config, "planner config file (key=value)");
  cmd_sim->add_option("--traj-out", sim_traj_out,
                      "executed-trajectory CSV (grid 1 only)");

  std::string all_scenario = "both";
  CLI::App* cmd_all = app.add_subcommand(
      "sweep-all", "all four conditions, summary table per scenario");
  cmd_all->add_option("--scenario", all_scenario, "driving scenario")
      ->check(CLI::IsMember({"lane", "intersection", "both"}))
      ->capture_default_str();
  cmd_all->add_option("--grid", grid_n, "offsets per vehicle")
      ->check(CLI::Range(1, 51))
      ->capture_default_str();
  cmd_all->add_option("--out", file_out, "summary CSV path");
  cmd_all->add_option("--config", sim_config, "planner config file (key=value)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(cmd_aoc)) {
      AoCResult result = compute_aoc(transform_kind_from_name(model),
                                     RewardGaps{gap_a, gap_b}, oracle_res);
      out << io::fixed6(result.analytic) << "\n";
      if (result.oracle) {
        out << "oracle: " << io::fixed6(result.oracle->fraction) << "\n";
      }
    } else if (app.got_subcommand(cmd_region)) {
      ConflictRaster raster = rasterize_region(transform_kind_from_name(model),
                                               RewardGaps{gap_a, gap_b}, region_res);
      std::filesystem::path pgm(file_out);
      std::filesystem::path csv = pgm;
      csv.replace_extension(".csv");
      write_raster_pgm(raster, pgm.string());
      write_raster_csv(raster, csv.string());
      out << "wrote " << pgm.string() << " and " << csv.string()
          << " (conflict fraction " << io::fixed6(raster.conflict_fraction())
          << ")\n";
    } else if (app.got_subcommand(cmd_curve)) {
      auto points = aoc_curve(transform_kind_from_name(model), gap_b, curve_min,
                              curve_max, curve_samples);
      std::ostringstream os;
      os << "A,aoc\n";
      for (const auto& [a, v] : points) {
        os << io::fixed6(a) << ',' << io::fixed6(v) << '\n';
      }
      io::write_file_atomic(file_out, os.str());
      out << "wrote " << file_out << " (" << points.size() << " samples)\n";
    } else if (app.got_subcommand(cmd_solve) || app.got_subcommand(cmd_conflict)) {
      SocialParams params{transform_kind_from_name(game_model), alpha1, alpha2};
      try {
        params.validate();
      } catch (const std::exception& e) {
        err << "error: --alpha1/--alpha2: " << e.what() << "\n";
        return 2;
      }
      BimatrixGame game = BimatrixGame::load(game_file);
      BimatrixGame transformed = transform_game(game, params);
      if (app.got_subcommand(cmd_solve)) {
        std::vector<PlayerId> leaders;
        if (game_leader.empty()) {
          leaders = {PlayerId::Row, PlayerId::Col};
        } else {
          leaders = {game_leader == "row" ? PlayerId::Row : PlayerId::Col};
        }
        for (PlayerId leader : leaders) {
          Equilibrium eq = solve_stackelberg(transformed, leader);
          out << "leader: " << to_string(leader) << "\n"
              << "equilibrium: " << equilibrium_actions(transformed, eq) << "\n"
              << "leader-value: " << reward_str(eq.leader_value) << "\n"
              << "follower-value: " << reward_str(eq.follower_value) << "\n";
        }
      } else {
        ConflictVerdict verdict = detect_conflict(transformed);
        out << "conflict: " << (verdict.in_conflict ? "true" : "false") << "\n"
            << "row-led: " << equilibrium_actions(transformed, verdict.row_led)
            << "\n"
            << "col-led: " << equilibrium_actions(transformed, verdict.col_led)
            << "\n";
      }
    } else if (app.got_subcommand(cmd_sim)) {
      sim::ScenarioConfig cfg;
      cfg.scenario = sim::scenario_from_name(sim_scenario);
      cfg.condition = sim::condition_from_name(sim_condition);
      if (!sim_config.empty()) apply_config_file(cfg, sim_config);
      if (!sim_traj_out.empty() && grid_n != 1) {
        err << "error: --traj-out requires --grid 1\n";
        return 2;
      }
      sim::SweepResult sweep = sim::run_sweep(cfg, grid_n, seed);
      io::write_file_atomic(file_out, sweep_csv(sweep));
      if (!sim_traj_out.empty()) {
        io::write_file_atomic(
            sim_traj_out,
            trajectory_csv(sweep.entries.front().outcome, cfg.planner.dt));
      }
      print_summary_header(out, cfg.scenario);
      print_summary_line(out, sweep);
      out << "wrote " << file_out << "\n";
    } else if (app.got_subcommand(cmd_all)) {
      std::vector<sim::ScenarioKind> kinds;
      if (all_scenario == "both" || all_scenario == "lane") {
        kinds.push_back(sim::ScenarioKind::LaneChange);
      }
      if (all_scenario == "both" || all_scenario == "intersection") {
        kinds.push_back(sim::ScenarioKind::Intersection);
      }
      std::ostringstream csv;
      csv << "scenario,condition,row_action,col_action,avg_time\n";
      for (sim::ScenarioKind kind : kinds) {
        print_summary_header(out, kind);
        for (sim::Condition condition :
             {sim::Condition::AgreeRowLeads, sim::Condition::AgreeColLeads,
              sim::Condition::BothAssumeLead, sim::Condition::BothAssumeFollow}) {
          sim::ScenarioConfig cfg;
          cfg.scenario = kind;
          cfg.condition = condition;
          if (!sim_config.empty()) apply_config_file(cfg, sim_config);
          sim::SweepResult sweep = sim::run_sweep(cfg, grid_n, seed);
          print_summary_line(out, sweep);
          csv << sim::to_string(kind) << ',' << sim::to_string(condition) << ','
              << sweep.intentions.first << ',' << sweep.intentions.second << ','
              << io::fixed6(sweep.average_completion) << '\n';
        }
      }
      if (!file_out.empty()) {
        io::write_file_atomic(file_out, csv.str());
        out << "wrote " << file_out << "\n";
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace conflict::cli
