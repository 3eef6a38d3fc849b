#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conflict/game.hpp"
#include "conflict/transforms.hpp"

namespace conflict {

/// Preference margins A = r211 - r121 > 0 and B = r122 - r212 > 0.
struct RewardGaps {
  double A = 1.0;
  double B = 1.0;
  void validate() const;
};

/// Closed-form Area of Conflict over the unit parameter square (the SVO
/// angle square is normalized by (pi/2)^2):
///   Baseline   1
///   Pure       min(A/B, B/A)
///   SVO        (p1 p2 + (pi/2 - p1)(pi/2 - p2)) / (pi/2)^2,
///              p_i = clamp(atan(A/B) resp. atan(B/A)) to [0, pi/2]
///   Altruism   2 A B / (A + B)^2
///   Augmented  ln(A+B)(A/B + B/A) - (A/B ln A + B/A ln B) - 1
double aoc_analytic(TransformKind model, const RewardGaps& gaps);

/// Membership test for the conflict region in coefficient space. For Svo
/// the coefficients are the angles in [0, pi/2]. All bounds are strict;
/// points exactly on a threshold belong to neither region. Augmented
/// altruism additionally requires 0 < alpha1 < 1 and uses the
/// integral-consistent upper bound B / (B + (1 - alpha1) A).
bool conflict_predicate(TransformKind model, const RewardGaps& gaps,
                        double alpha1, double alpha2);

/// Canonical 2x2 game realizing the gaps: anti-diagonal payoffs
/// (r211, r212) = (A, 0) and (r121, r122) = (0, B); both diagonal cells
/// one unit below every anti-diagonal payoff for both players, keeping
/// all values finite while preserving the preference orderings.
BimatrixGame canonical_conflict_game(const RewardGaps& gaps);

enum class OracleVerdict { NoConflict, Conflict, Boundary };

/// Independent route to the conflict predicate: transforms the full game
/// cell-wise (per-player coefficients) and solves both leader
/// assignments. Payoff ties make the outcome tie-break-dependent, which
/// is reported as Boundary and treated as "either" by comparisons.
OracleVerdict equilibrium_conflict_oracle(const BimatrixGame& game,
                                          TransformKind model, double alpha1,
                                          double alpha2);

struct OracleEstimate {
  double fraction = 0.0;  // conflict cells / (total - boundary)
  long conflict_cells = 0;
  long boundary_cells = 0;
  long total_cells = 0;
};

/// Grid estimate of the AoC: evaluates the equilibrium oracle on the
/// canonical game at the cell centers of a resolution x resolution grid
/// over the unit square (rescaled to the angle square for Svo).
OracleEstimate aoc_oracle(TransformKind model, const RewardGaps& gaps,
                          int resolution);

struct AoCResult {
  TransformKind model = TransformKind::Baseline;
  RewardGaps gaps;
  double analytic = 0.0;
  std::optional<OracleEstimate> oracle;
};

AoCResult compute_aoc(TransformKind model, const RewardGaps& gaps,
                      std::optional<int> oracle_resolution = std::nullopt);

/// Boolean raster of conflict_predicate over cell centers. Grid index
/// (i, j) covers the cell centered at ((i+.5)/res, (j+.5)/res) in
/// normalized coordinates, i along alpha1.
struct ConflictRaster {
  TransformKind model = TransformKind::Baseline;
  RewardGaps gaps;
  int resolution = 0;
  std::vector<std::uint8_t> cells;  // row-major over i (alpha1), j (alpha2)

  bool at(int i, int j) const {
    return cells[static_cast<std::size_t>(i) * resolution + j] != 0;
  }
  double conflict_fraction() const;
};

ConflictRaster rasterize_region(TransformKind model, const RewardGaps& gaps,
                                int resolution);

/// P2 PGM, 255 = conflict, 0 = no conflict; alpha1 runs left to right,
/// alpha2 bottom to top.
void write_raster_pgm(const ConflictRaster& raster, const std::string& path);
/// Cell-center table: alpha1,alpha2,conflict (native units; angles for Svo).
void write_raster_csv(const ConflictRaster& raster, const std::string& path);

/// Analytic AoC sampled at `samples` evenly spaced A values in
/// [a_lo, a_hi]; requires a_lo > 0 and samples >= 1.
std::vector<std::pair<double, double>> aoc_curve(TransformKind model, double B,
                                                 double a_lo, double a_hi,
                                                 int samples);

}  // namespace conflict
