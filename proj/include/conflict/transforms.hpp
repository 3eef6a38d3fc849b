#pragma once

#include <string>
#include <utility>

#include "conflict/game.hpp"

namespace conflict {

enum class TransformKind { Baseline, PureAltruism, Altruism, AugmentedAltruism, Svo };

TransformKind transform_kind_from_name(const std::string& name);
std::string to_string(TransformKind kind);

/// Social parameters of the two players. For Svo the two fields hold the
/// orientation angles in radians, confined to [0, pi/2]. PureAltruism
/// uses the single shared coefficient of its definition: alpha_row is
/// applied to both players and alpha_col is ignored.
struct SocialParams {
  TransformKind kind = TransformKind::Baseline;
  double alpha_row = 0.0;
  double alpha_col = 0.0;

  /// Throws std::invalid_argument for out-of-range coefficients and
  /// DegenerateCoefficients for alpha_row * alpha_col >= 1 under
  /// AugmentedAltruism.
  void validate() const;
};

/// Effective reward of one player for one cell.
///   Baseline            r_self
///   PureAltruism        r_self + alpha_self * r_other
///   Altruism            (1 - a_s) r_self + a_s r_other
///   AugmentedAltruism   ((1 - a_s) r_self + a_s (1 - a_o) r_other) / (1 - a_s a_o)
///   Svo                 cos(a_s) r_self + sin(a_s) r_other
/// alpha_other participates only in the augmented form.
double transform_pair(double r_self, double r_other, double alpha_self,
                      double alpha_other, TransformKind kind);

/// Applies transform_pair cell-wise to both players. A sentinel in either
/// player's payoff makes the whole cell sentinel for both: the cell is
/// mutually undesirable regardless of coefficients and the transform
/// arithmetic is undefined on it.
BimatrixGame transform_game(const BimatrixGame& game, const SocialParams& params);

/// Allocation-free variant for hot loops; `out` must have the same
/// dimensions as `game`.
void transform_game_into(const BimatrixGame& game, const SocialParams& params,
                         BimatrixGame& out);

/// Per-player reading of the transforms: alpha_row and alpha_col are each
/// player's own coefficient for every kind, including PureAltruism, where
/// r*_i = r_i + alpha_i * r_{-i}. This is the reading under which the
/// conflict-region bounds and the area table are derived; transform_game
/// keeps the shared-coefficient reading of the pure-altruism definition.
BimatrixGame transform_game_per_player(const BimatrixGame& game,
                                       TransformKind kind, double alpha_row,
                                       double alpha_col);
void transform_game_per_player_into(const BimatrixGame& game,
                                    TransformKind kind, double alpha_row,
                                    double alpha_col, BimatrixGame& out);

/// Runs the mutual-altruism recurrence
///   r1^k = (1 - a1) r1 + a1 r2^{k-1}
///   r2^k = (1 - a2) r2 + a2 r1^{k-1}
/// from (r1, r2) for at most `iterations` steps, stopping early once
/// successive iterates differ by less than 1e-12. Serves as the
/// convergence oracle for the augmented closed form.
/// Throws DegenerateCoefficients when a1 = a2 = 1.
std::pair<double, double> iterate_altruism(double r1, double r2, double alpha1,
                                           double alpha2, int iterations);

}  // namespace conflict
