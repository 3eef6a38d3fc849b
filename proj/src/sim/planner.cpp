#include "conflict/sim/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "conflict/errors.hpp"

namespace conflict::sim {

int PlannerConfig::horizon_steps() const {
  if (!(dt > 0.0) || !(horizon > 0.0)) {
    throw std::invalid_argument("horizon and dt must be positive");
  }
  double steps = horizon / dt;
  int n = static_cast<int>(std::llround(steps));
  if (std::abs(steps - n) > 1e-9 || n < 1) {
    throw std::invalid_argument("horizon must be an integral number of steps");
  }
  return n;
}

double ellipse_value(const VehicleState& a, const VehicleState& b,
                     const PlannerConfig& cfg) {
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  double ea = cfg.ellipse_a();
  double eb = cfg.ellipse_b();
  return dx * dx / (ea * ea) + dy * dy / (eb * eb);
}

namespace {

// Decision vector layout: [a_i(0..H), omega_i(0..H), a_o(0..H), omega_o(0..H)].
struct Layout {
  int H;
  int dims() const { return 4 * H; }
  int owner(int dim) const { return dim < 2 * H ? 0 : 1; }
  double lower(int dim, const PlannerConfig& cfg) const {
    bool is_accel = (dim % (2 * H)) < H;
    return is_accel ? cfg.accel_min : -cfg.omega_max;
  }
  double upper(int dim, const PlannerConfig& cfg) const {
    bool is_accel = (dim % (2 * H)) < H;
    return is_accel ? cfg.accel_max : cfg.omega_max;
  }
};

void rollout(const VehicleState& initial, const double* accel,
             const double* omega, int steps, double dt, Trajectory& out) {
  out.states.resize(steps + 1);
  out.controls.resize(steps);
  out.states[0] = initial;
  for (int k = 0; k < steps; ++k) {
    out.controls[k] = {accel[k], omega[k]};
    out.states[k + 1] = step_dynamics(out.states[k], out.controls[k], dt);
  }
}

class JointObjective {
 public:
  JointObjective(const PlanAgent& agent_i, const PlanAgent& agent_other,
                 const PlannerConfig& cfg)
      : a_(agent_i), b_(agent_other), cfg_(cfg), layout_{cfg.horizon_steps()} {
    double margin = cfg.plan_ellipse_margin;
    plan_ea_ = cfg.ellipse_a() + margin;
    plan_eb_ = cfg.ellipse_b() + margin;
  }

  const Layout& layout() const { return layout_; }

  void set_penalty_weight(double w) { weight_ = w; }

  // Evaluates the penalized objective and caches both rolled trajectories.
  double eval(const std::vector<double>& u) {
    roll_agent(0, u.data(), traj_i_);
    roll_agent(1, u.data(), traj_o_);
    return objective(traj_i_, traj_o_) + regularizer(u);
  }

  // Forward-difference probe of one coordinate; eval() must have cached
  // the base trajectories. Only the owning agent is re-rolled.
  double eval_perturbed(std::vector<double>& u, int dim, double h) {
    double saved = u[dim];
    u[dim] = saved + h;
    double value;
    if (layout_.owner(dim) == 0) {
      roll_agent(0, u.data(), scratch_);
      value = objective(scratch_, traj_o_);
    } else {
      roll_agent(1, u.data(), scratch_);
      value = objective(traj_i_, scratch_);
    }
    value += regularizer(u);
    u[dim] = saved;
    return value;
  }

  // Worst violation against the nominal constraints (contract ellipse,
  // road corridor, speed limit) of the cached trajectories.
  double nominal_violation() const {
    double worst = 0.0;
    for (std::size_t k = 0; k < traj_i_.states.size(); ++k) {
      const VehicleState& si = traj_i_.states[k];
      const VehicleState& so = traj_o_.states[k];
      worst = std::max(worst, 1.0 - ellipse_value(si, so, cfg_));
      worst = std::max(worst, road_violation(si, a_.road));
      worst = std::max(worst, road_violation(so, b_.road));
      worst = std::max(worst, si.v - cfg_.speed_limit);
      worst = std::max(worst, so.v - cfg_.speed_limit);
    }
    return std::max(worst, 0.0);
  }

  double intention_cost() const {
    return evaluate_cost(traj_i_, traj_o_, a_.cost, b_.cost);
  }

  const Trajectory& traj_i() const { return traj_i_; }
  const Trajectory& traj_o() const { return traj_o_; }

 private:
  static double road_violation(const VehicleState& s, const RoadSpec& road) {
    return std::abs(road.frame.lateral(s)) - road.half_width;
  }

  void roll_agent(int which, const double* u, Trajectory& out) const {
    int H = layout_.H;
    const double* base = u + (which == 0 ? 0 : 2 * H);
    rollout(which == 0 ? a_.initial : b_.initial, base, base + H, H, cfg_.dt, out);
  }

  double regularizer(const std::vector<double>& u) const {
    double s = 0.0;
    for (double v : u) s += v * v;
    return cfg_.control_reg * s;
  }

  double objective(const Trajectory& ti, const Trajectory& to) const {
    double cost = evaluate_cost(ti, to, a_.cost, b_.cost);
    double margin = cfg_.plan_constraint_margin;
    double speed_cap = cfg_.speed_limit - margin;
    double pen = 0.0;
    for (std::size_t k = 0; k < ti.states.size(); ++k) {
      const VehicleState& si = ti.states[k];
      const VehicleState& so = to.states[k];
      double dx = si.x - so.x;
      double dy = si.y - so.y;
      double e = dx * dx / (plan_ea_ * plan_ea_) + dy * dy / (plan_eb_ * plan_eb_);
      double vc = std::max(0.0, 1.0 - e);
      double vri = std::max(0.0, road_violation(si, a_.road) + margin);
      double vro = std::max(0.0, road_violation(so, b_.road) + margin);
      double vsi = std::max(0.0, si.v - speed_cap);
      double vso = std::max(0.0, so.v - speed_cap);
      pen += vc * vc + vri * vri + vro * vro + vsi * vsi + vso * vso;
    }
    return cost + weight_ * pen;
  }

  PlanAgent a_;
  PlanAgent b_;
  PlannerConfig cfg_;
  Layout layout_;
  double plan_ea_ = 0.0;
  double plan_eb_ = 0.0;
  double weight_ = 1.0;
  Trajectory traj_i_, traj_o_, scratch_;
};

void project(std::vector<double>& u, const Layout& layout,
             const PlannerConfig& cfg) {
  for (int d = 0; d < layout.dims(); ++d) {
    u[d] = std::clamp(u[d], layout.lower(d, cfg), layout.upper(d, cfg));
  }
}

// Projected sign-gradient descent with per-coordinate adaptive steps
// (iRprop-) at a fixed penalty weight. Per-coordinate steps cope with the
// strong anisotropy of the shooting parametrization, where early controls
// have far more leverage than late ones. Returns the best value seen and
// leaves u at the corresponding point.
double descend(JointObjective& obj, std::vector<double>& u,
               const PlannerConfig& cfg) {
  const Layout& layout = obj.layout();
  const int n = layout.dims();
  std::vector<double> grad(n, 0.0), prev_grad(n, 0.0), step(n);
  for (int d = 0; d < n; ++d) {
    step[d] = 0.05 * (layout.upper(d, cfg) - layout.lower(d, cfg));
  }

  std::vector<double> best_u = u;
  double best_f = obj.eval(u);
  int stalled = 0;

  for (int it = 0; it < cfg.opt_iterations; ++it) {
    double f0 = obj.eval(u);
    double gmax = 0.0;
    for (int d = 0; d < n; ++d) {
      double lo = layout.lower(d, cfg), hi = layout.upper(d, cfg);
      if (hi - lo < 1e-12) {
        grad[d] = 0.0;  // frozen coordinate (e.g. turning suppressed)
        continue;
      }
      double h = cfg.gradient_step * (1.0 + std::abs(u[d]));
      grad[d] = (obj.eval_perturbed(u, d, h) - f0) / h;
      gmax = std::max(gmax, std::abs(grad[d]));
    }
    if (gmax < 1e-10) break;

    for (int d = 0; d < n; ++d) {
      double lo = layout.lower(d, cfg), hi = layout.upper(d, cfg);
      if (hi - lo < 1e-12) continue;
      double same = grad[d] * prev_grad[d];
      if (same > 0.0) {
        step[d] = std::min(step[d] * 1.2, 0.5 * (hi - lo));
      } else if (same < 0.0) {
        step[d] = std::max(step[d] * 0.5, 1e-7);
        grad[d] = 0.0;  // skip one move after a sign flip
      }
      prev_grad[d] = grad[d];
      if (grad[d] > 0.0) {
        u[d] = std::clamp(u[d] - step[d], lo, hi);
      } else if (grad[d] < 0.0) {
        u[d] = std::clamp(u[d] + step[d], lo, hi);
      }
    }

    double f1 = obj.eval(u);
    if (f1 < best_f - 1e-9 * (1.0 + std::abs(best_f))) {
      best_f = f1;
      best_u = u;
      stalled = 0;
    } else if (++stalled >= 20) {
      break;
    }
  }

  u = best_u;
  return obj.eval(u);
}

struct Candidate {
  std::vector<double> controls;
  double cost = 0.0;
  double violation = 0.0;
  bool feasible() const { return violation <= 0.0; }
};

enum class SeedRole { Hold, Yield, Go };

// Heuristic warm-start profile for one agent: yield = brake through the
// first half of the horizon, go = advance; agents whose target lane lies
// away from their current lateral position also get a bang-bang steering
// pulse toward it, delayed when yielding so the gap opens first. Seeds
// only select the passing-order basin; descent shapes the result.
void fill_agent_seed(double* accel, double* omega, const PlanAgent& agent,
                     const PlannerConfig& cfg, SeedRole role, int H) {
  double brake = std::max(cfg.accel_min, -3.0);
  for (int k = 0; k < H / 2; ++k) {
    if (role == SeedRole::Yield) accel[k] = brake;
    if (role == SeedRole::Go) accel[k] = cfg.accel_max;
  }

  double lat0 = agent.cost.target_lane.lateral(agent.initial);
  double v0 = agent.initial.v;
  if (std::abs(lat0) > 0.5 && v0 > 1.0 && cfg.omega_max > 1e-9) {
    double ramp_s = std::sqrt(std::abs(lat0) / (v0 * cfg.omega_max));
    int ramp = std::clamp(static_cast<int>(std::lround(ramp_s / cfg.dt)), 1, H / 4);
    int start = role == SeedRole::Yield ? H / 3 : H / 8;
    double sign = lat0 > 0.0 ? -1.0 : 1.0;  // rotate so |lateral| shrinks
    for (int k = 0; k < ramp && start + k < H; ++k) {
      omega[start + k] = sign * cfg.omega_max;
    }
    for (int k = 0; k < ramp && start + ramp + k < H; ++k) {
      omega[start + ramp + k] = -sign * cfg.omega_max;
    }
  }
}

std::vector<double> build_seed(const PlanAgent& agent_i,
                               const PlanAgent& agent_other,
                               const PlannerConfig& cfg, SeedRole role_i,
                               SeedRole role_o, int H) {
  std::vector<double> u(4 * H, 0.0);
  fill_agent_seed(u.data(), u.data() + H, agent_i, cfg, role_i, H);
  fill_agent_seed(u.data() + 2 * H, u.data() + 3 * H, agent_other, cfg, role_o, H);
  return u;
}

// Runs the escalation schedule from one seed.
Candidate optimize_seed(JointObjective& obj, std::vector<double> u,
                        const PlannerConfig& cfg) {
  const Layout& layout = obj.layout();
  project(u, layout, cfg);
  double weight = cfg.penalty_initial;

  for (int round = 0; round < cfg.penalty_rounds; ++round) {
    obj.set_penalty_weight(weight);
    descend(obj, u, cfg);
    obj.eval(u);
    if (obj.nominal_violation() <= cfg.constraint_tol) break;
    weight *= cfg.penalty_growth;
  }

  obj.eval(u);
  Candidate cand;
  cand.cost = obj.intention_cost();
  cand.violation = std::max(0.0, obj.nominal_violation() - cfg.constraint_tol);
  cand.controls = std::move(u);
  return cand;
}

}  // namespace

PlanResult plan_joint(const PlanAgent& agent_i, const PlanAgent& agent_other,
                      const PlannerConfig& cfg,
                      const std::vector<double>* warm_start) {
  int H = cfg.horizon_steps();
  if (ellipse_value(agent_i.initial, agent_other.initial, cfg) < 1.0) {
    throw InfeasibleStart("initial states violate the separation ellipse");
  }

  JointObjective obj(agent_i, agent_other, cfg);
  std::vector<Candidate> candidates;

  if (warm_start != nullptr) {
    if (static_cast<int>(warm_start->size()) != 4 * H) {
      throw std::invalid_argument("warm start has the wrong dimension");
    }
    candidates.push_back(optimize_seed(obj, *warm_start, cfg));
  }

  if (candidates.empty() || !candidates.front().feasible()) {
    // Structured seeds covering the passing-order basins: both hold
    // course, agent i yields while the other advances, and the mirror.
    for (auto [role_i, role_o] :
         {std::pair{SeedRole::Hold, SeedRole::Hold},
          std::pair{SeedRole::Yield, SeedRole::Go},
          std::pair{SeedRole::Go, SeedRole::Yield}}) {
      candidates.push_back(optimize_seed(
          obj, build_seed(agent_i, agent_other, cfg, role_i, role_o, H), cfg));
    }
  }

  const Candidate* best = &candidates.front();
  for (const Candidate& c : candidates) {
    bool better = c.feasible() != best->feasible()
                      ? c.feasible()
                      : (c.feasible() ? c.cost < best->cost
                                      : c.violation < best->violation);
    if (better) best = &c;
  }

  obj.eval(best->controls);
  PlanResult result;
  result.self = obj.traj_i();
  result.other = obj.traj_o();
  result.cost = obj.intention_cost();
  result.max_violation = obj.nominal_violation();
  result.converged = result.max_violation <= cfg.constraint_tol;
  return result;
}

std::vector<double> pack_controls(const PlanResult& result) {
  int H = result.self.steps();
  std::vector<double> u(4 * H);
  for (int k = 0; k < H; ++k) {
    u[k] = result.self.controls[k].a;
    u[H + k] = result.self.controls[k].omega;
    u[2 * H + k] = result.other.controls[k].a;
    u[3 * H + k] = result.other.controls[k].omega;
  }
  return u;
}

std::vector<double> shift_warm_start(const std::vector<double>& controls,
                                     int horizon_steps, int stride) {
  int H = horizon_steps;
  std::vector<double> out(controls.size());
  for (int seq = 0; seq < 4; ++seq) {
    const double* src = controls.data() + seq * H;
    double* dst = out.data() + seq * H;
    for (int k = 0; k < H; ++k) {
      dst[k] = src[std::min(k + stride, H - 1)];
    }
  }
  return out;
}

}  // namespace conflict::sim
