#include "conflict/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "conflict/io.hpp"

namespace conflict {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

double clamp_angle(double t) { return std::max(0.0, std::min(kHalfPi, t)); }

}  // namespace

void RewardGaps::validate() const {
  if (!(A > 0.0) || !(B > 0.0) || !std::isfinite(A) || !std::isfinite(B)) {
    throw std::invalid_argument("reward gaps A and B must be positive reals");
  }
}

double aoc_analytic(TransformKind model, const RewardGaps& gaps) {
  gaps.validate();
  double A = gaps.A, B = gaps.B;
  switch (model) {
    case TransformKind::Baseline:
      return 1.0;
    case TransformKind::PureAltruism:
      return std::min(A / B, B / A);
    case TransformKind::Svo: {
      double p1 = clamp_angle(std::atan(A / B));
      double p2 = clamp_angle(std::atan(B / A));
      return (p1 * p2 + (kHalfPi - p1) * (kHalfPi - p2)) / (kHalfPi * kHalfPi);
    }
    case TransformKind::Altruism:
      return 2.0 * A * B / ((A + B) * (A + B));
    case TransformKind::AugmentedAltruism:
      return std::log(A + B) * (A / B + B / A) -
             (A / B * std::log(A) + B / A * std::log(B)) - 1.0;
  }
  throw std::logic_error("unreachable");
}

bool conflict_predicate(TransformKind model, const RewardGaps& gaps,
                        double alpha1, double alpha2) {
  gaps.validate();
  double A = gaps.A, B = gaps.B;
  switch (model) {
    case TransformKind::Baseline:
      return true;
    case TransformKind::PureAltruism:
      return (alpha1 > A / B && alpha2 > B / A) ||
             (alpha1 < A / B && alpha2 < B / A);
    case TransformKind::Altruism: {
      double t1 = A / (A + B), t2 = B / (A + B);
      return (alpha1 > t1 && alpha2 > t2) || (alpha1 < t1 && alpha2 < t2);
    }
    case TransformKind::AugmentedAltruism: {
      if (!(alpha1 > 0.0 && alpha1 < 1.0)) return false;
      double lower = 1.0 - (1.0 - alpha1) / alpha1 * (A / B);
      double upper = B / (B + (1.0 - alpha1) * A);
      return lower < alpha2 && alpha2 < upper;
    }
    case TransformKind::Svo: {
      double p1 = std::atan(A / B);
      double p2 = std::atan(B / A);
      return (alpha1 < p1 && alpha2 < p2) || (alpha1 > p1 && alpha2 > p2);
    }
  }
  throw std::logic_error("unreachable");
}

BimatrixGame canonical_conflict_game(const RewardGaps& gaps) {
  gaps.validate();
  double off = std::min({gaps.A, gaps.B, 0.0}) - 1.0;
  RewardPair diag{Reward(off), Reward(off)};
  return BimatrixGame::make2x2(diag, {Reward(0.0), Reward(gaps.B)},
                               {Reward(gaps.A), Reward(0.0)}, diag);
}

OracleVerdict equilibrium_conflict_oracle(const BimatrixGame& game,
                                          TransformKind model, double alpha1,
                                          double alpha2) {
  BimatrixGame transformed = transform_game_per_player(game, model, alpha1, alpha2);
  ConflictDetail detail = detect_conflict_detail(transformed);
  if (detail.tie_encountered) return OracleVerdict::Boundary;
  return detail.verdict.in_conflict ? OracleVerdict::Conflict
                                    : OracleVerdict::NoConflict;
}

OracleEstimate aoc_oracle(TransformKind model, const RewardGaps& gaps,
                          int resolution) {
  if (resolution < 10) throw std::invalid_argument("oracle resolution must be >= 10");
  BimatrixGame game = canonical_conflict_game(gaps);
  BimatrixGame scratch = game;
  double scale = model == TransformKind::Svo ? kHalfPi : 1.0;

  OracleEstimate est;
  est.total_cells = static_cast<long>(resolution) * resolution;
  for (int i = 0; i < resolution; ++i) {
    double a1 = (i + 0.5) / resolution * scale;
    for (int j = 0; j < resolution; ++j) {
      double a2 = (j + 0.5) / resolution * scale;
      transform_game_per_player_into(game, model, a1, a2, scratch);
      ConflictDetail detail = detect_conflict_detail(scratch);
      if (detail.tie_encountered) {
        ++est.boundary_cells;
      } else if (detail.verdict.in_conflict) {
        ++est.conflict_cells;
      }
    }
  }
  long counted = est.total_cells - est.boundary_cells;
  est.fraction = counted > 0 ? static_cast<double>(est.conflict_cells) / counted : 0.0;
  return est;
}

AoCResult compute_aoc(TransformKind model, const RewardGaps& gaps,
                      std::optional<int> oracle_resolution) {
  AoCResult result;
  result.model = model;
  result.gaps = gaps;
  result.analytic = aoc_analytic(model, gaps);
  if (oracle_resolution) {
    result.oracle = aoc_oracle(model, gaps, *oracle_resolution);
  }
  return result;
}

double ConflictRaster::conflict_fraction() const {
  if (cells.empty()) return 0.0;
  long count = 0;
  for (std::uint8_t c : cells) count += c != 0;
  return static_cast<double>(count) / static_cast<double>(cells.size());
}

ConflictRaster rasterize_region(TransformKind model, const RewardGaps& gaps,
                                int resolution) {
  if (resolution < 1) throw std::invalid_argument("raster resolution must be >= 1");
  ConflictRaster raster;
  raster.model = model;
  raster.gaps = gaps;
  raster.resolution = resolution;
  raster.cells.assign(static_cast<std::size_t>(resolution) * resolution, 0);
  double scale = model == TransformKind::Svo ? kHalfPi : 1.0;
  for (int i = 0; i < resolution; ++i) {
    double a1 = (i + 0.5) / resolution * scale;
    for (int j = 0; j < resolution; ++j) {
      double a2 = (j + 0.5) / resolution * scale;
      raster.cells[static_cast<std::size_t>(i) * resolution + j] =
          conflict_predicate(model, gaps, a1, a2) ? 1 : 0;
    }
  }
  return raster;
}

void write_raster_pgm(const ConflictRaster& raster, const std::string& path) {
  std::ostringstream os;
  int res = raster.resolution;
  os << "P2\n" << res << ' ' << res << "\n255\n";
  // Top image row = highest alpha2 band, so the file views like a plot.
  for (int j = res - 1; j >= 0; --j) {
    for (int i = 0; i < res; ++i) {
      if (i > 0) os << ' ';
      os << (raster.at(i, j) ? 255 : 0);
    }
    os << '\n';
  }
  io::write_file_atomic(path, os.str());
}

void write_raster_csv(const ConflictRaster& raster, const std::string& path) {
  std::ostringstream os;
  os << "alpha1,alpha2,conflict\n";
  int res = raster.resolution;
  double scale = raster.model == TransformKind::Svo ? kHalfPi : 1.0;
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      os << io::fixed6((i + 0.5) / res * scale) << ','
         << io::fixed6((j + 0.5) / res * scale) << ','
         << (raster.at(i, j) ? 1 : 0) << '\n';
    }
  }
  io::write_file_atomic(path, os.str());
}

std::vector<std::pair<double, double>> aoc_curve(TransformKind model, double B,
                                                 double a_lo, double a_hi,
                                                 int samples) {
  if (!(a_lo > 0.0)) throw std::invalid_argument("curve requires a_lo > 0");
  if (a_hi < a_lo) throw std::invalid_argument("curve requires a_hi >= a_lo");
  if (samples < 1) throw std::invalid_argument("curve requires samples >= 1");
  std::vector<std::pair<double, double>> out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    double A = samples == 1 ? a_lo : a_lo + (a_hi - a_lo) * k / (samples - 1);
    out.emplace_back(A, aoc_analytic(model, RewardGaps{A, B}));
  }
  return out;
}

}  // namespace conflict
