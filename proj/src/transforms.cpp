#include "conflict/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace conflict {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

void check_unit_range(double a, const char* name) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

void check_angle_range(double t, const char* name) {
  if (!(t >= 0.0 && t <= kHalfPi)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, pi/2]");
  }
}

// Cell-wise application with per-player coefficients already resolved.
void apply_cellwise(const BimatrixGame& game, TransformKind kind,
                    double alpha_row, double alpha_col, BimatrixGame& out) {
  if (out.rows() != game.rows() || out.cols() != game.cols()) {
    throw std::invalid_argument("output game dimensions do not match");
  }
  for (int m = 0; m < game.rows(); ++m) {
    for (int n = 0; n < game.cols(); ++n) {
      const RewardPair& cell = game.at(m, n);
      RewardPair& dst = out.at(m, n);
      if (cell.row.is_neg_inf() || cell.col.is_neg_inf()) {
        dst.row = Reward::neg_inf();
        dst.col = Reward::neg_inf();
        continue;
      }
      double r1 = cell.row.value();
      double r2 = cell.col.value();
      dst.row = Reward(transform_pair(r1, r2, alpha_row, alpha_col, kind));
      dst.col = Reward(transform_pair(r2, r1, alpha_col, alpha_row, kind));
    }
  }
}

}  // namespace

TransformKind transform_kind_from_name(const std::string& name) {
  if (name == "baseline") return TransformKind::Baseline;
  if (name == "pure") return TransformKind::PureAltruism;
  if (name == "altruism") return TransformKind::Altruism;
  if (name == "aug") return TransformKind::AugmentedAltruism;
  if (name == "svo") return TransformKind::Svo;
  throw std::invalid_argument("unknown model '" + name +
                              "' (expected baseline|pure|altruism|aug|svo)");
}

std::string to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::Baseline: return "baseline";
    case TransformKind::PureAltruism: return "pure";
    case TransformKind::Altruism: return "altruism";
    case TransformKind::AugmentedAltruism: return "aug";
    case TransformKind::Svo: return "svo";
  }
  throw std::logic_error("unreachable");
}

void SocialParams::validate() const {
  switch (kind) {
    case TransformKind::Baseline:
      return;  // coefficients ignored
    case TransformKind::PureAltruism:
      check_unit_range(alpha_row, "alpha (shared)");
      return;
    case TransformKind::Altruism:
      check_unit_range(alpha_row, "alpha_row");
      check_unit_range(alpha_col, "alpha_col");
      return;
    case TransformKind::AugmentedAltruism:
      check_unit_range(alpha_row, "alpha_row");
      check_unit_range(alpha_col, "alpha_col");
      if (alpha_row * alpha_col >= 1.0) {
        throw DegenerateCoefficients(
            "augmented altruism requires alpha_row * alpha_col < 1");
      }
      return;
    case TransformKind::Svo:
      check_angle_range(alpha_row, "theta_row");
      check_angle_range(alpha_col, "theta_col");
      return;
  }
}

double transform_pair(double r_self, double r_other, double alpha_self,
                      double alpha_other, TransformKind kind) {
  switch (kind) {
    case TransformKind::Baseline:
      return r_self;
    case TransformKind::PureAltruism:
      return r_self + alpha_self * r_other;
    case TransformKind::Altruism:
      return (1.0 - alpha_self) * r_self + alpha_self * r_other;
    case TransformKind::AugmentedAltruism: {
      double denom = 1.0 - alpha_self * alpha_other;
      if (denom <= 0.0) {
        throw DegenerateCoefficients(
            "augmented altruism is unsolvable at alpha_i * alpha_-i = 1");
      }
      return ((1.0 - alpha_self) * r_self +
              alpha_self * (1.0 - alpha_other) * r_other) /
             denom;
    }
    case TransformKind::Svo:
      return std::cos(alpha_self) * r_self + std::sin(alpha_self) * r_other;
  }
  throw std::logic_error("unreachable");
}

void transform_game_into(const BimatrixGame& game, const SocialParams& params,
                         BimatrixGame& out) {
  params.validate();
  // PureAltruism carries a single shared coefficient.
  double a_row = params.alpha_row;
  double a_col = params.kind == TransformKind::PureAltruism ? params.alpha_row
                                                            : params.alpha_col;
  apply_cellwise(game, params.kind, a_row, a_col, out);
}

BimatrixGame transform_game(const BimatrixGame& game, const SocialParams& params) {
  BimatrixGame out = game;
  transform_game_into(game, params, out);
  return out;
}

void transform_game_per_player_into(const BimatrixGame& game,
                                    TransformKind kind, double alpha_row,
                                    double alpha_col, BimatrixGame& out) {
  apply_cellwise(game, kind, alpha_row, alpha_col, out);
}

BimatrixGame transform_game_per_player(const BimatrixGame& game,
                                       TransformKind kind, double alpha_row,
                                       double alpha_col) {
  BimatrixGame out = game;
  transform_game_per_player_into(game, kind, alpha_row, alpha_col, out);
  return out;
}

std::pair<double, double> iterate_altruism(double r1, double r2, double alpha1,
                                           double alpha2, int iterations) {
  check_unit_range(alpha1, "alpha1");
  check_unit_range(alpha2, "alpha2");
  if (alpha1 == 1.0 && alpha2 == 1.0) {
    throw DegenerateCoefficients("iteration diverges at alpha1 = alpha2 = 1");
  }
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");

  double x = r1, y = r2;
  for (int k = 0; k < iterations; ++k) {
    double nx = (1.0 - alpha1) * r1 + alpha1 * y;
    double ny = (1.0 - alpha2) * r2 + alpha2 * x;
    bool settled = std::abs(nx - x) < 1e-12 && std::abs(ny - y) < 1e-12;
    x = nx;
    y = ny;
    if (settled) break;
  }
  return {x, y};
}

}  // namespace conflict
