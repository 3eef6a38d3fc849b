#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "conflict/errors.hpp"

namespace conflict {

/// One player's payoff in one cell. Mutually catastrophic outcomes are
/// stored as an explicit negative-infinity sentinel rather than an IEEE
/// special, so transform arithmetic never sees a non-finite double.
class Reward {
 public:
  Reward() : value_(0.0), neg_inf_(false) {}
  Reward(double value);  // NOLINT(google-explicit-constructor) value-like type
  static Reward neg_inf() {
    Reward r;
    r.neg_inf_ = true;
    return r;
  }

  bool is_neg_inf() const { return neg_inf_; }
  bool is_finite() const { return !neg_inf_; }

  /// Finite value; calling this on the sentinel is a logic error.
  double value() const;

  // Sentinel compares below every finite value and equal to itself.
  friend bool operator<(const Reward& a, const Reward& b);
  friend bool operator==(const Reward& a, const Reward& b);
  friend bool operator!=(const Reward& a, const Reward& b) { return !(a == b); }
  friend bool operator>(const Reward& a, const Reward& b) { return b < a; }
  friend bool operator<=(const Reward& a, const Reward& b) { return !(b < a); }
  friend bool operator>=(const Reward& a, const Reward& b) { return !(a < b); }

 private:
  double value_;
  bool neg_inf_;
};

struct RewardPair {
  Reward row;
  Reward col;
};

enum class PlayerId { Row, Col };

PlayerId other(PlayerId p);
std::string to_string(PlayerId p);

/// Two-player matrix game: M row actions, N column actions, one payoff
/// pair per cell.
class BimatrixGame {
 public:
  BimatrixGame(std::vector<std::string> row_actions,
               std::vector<std::string> col_actions,
               std::vector<RewardPair> cells);

  /// Convenience for the common 2x2 case with default labels A1/A2, B1/B2.
  static BimatrixGame make2x2(RewardPair r11, RewardPair r12, RewardPair r21,
                              RewardPair r22);

  int rows() const { return static_cast<int>(row_actions_.size()); }
  int cols() const { return static_cast<int>(col_actions_.size()); }

  const RewardPair& at(int row, int col) const;
  RewardPair& at(int row, int col);

  const std::vector<std::string>& row_actions() const { return row_actions_; }
  const std::vector<std::string>& col_actions() const { return col_actions_; }
  void set_labels(std::vector<std::string> row_actions,
                  std::vector<std::string> col_actions);

  /// The payoff a player receives in a cell / the payoff of their opponent.
  const Reward& payoff(PlayerId p, int row, int col) const;

  BimatrixGame transposed() const;

  /// Plain-text format: optional "rows:"/"cols:" label lines, a "M N"
  /// line, then M lines of N cells, each cell "r1,r2" with "-inf" allowed.
  static BimatrixGame parse(std::istream& in);
  static BimatrixGame load(const std::string& path);
  std::string format() const;

 private:
  BimatrixGame() = default;
  std::vector<std::string> row_actions_;
  std::vector<std::string> col_actions_;
  std::vector<RewardPair> cells_;  // row-major
};

/// Stackelberg outcome for a fixed leader assignment.
struct Equilibrium {
  PlayerId leader = PlayerId::Row;
  int row_action = 0;
  int col_action = 0;
  Reward leader_value;    // finite whenever solve_stackelberg returns
  Reward follower_value;  // may be the sentinel in pathological games
};

struct ConflictVerdict {
  Equilibrium row_led;
  Equilibrium col_led;
  bool in_conflict = false;
};

/// Solves the game with `leader` committing first and the follower
/// best-responding with its own payoff. Follower ties are broken in the
/// leader's favor (strong Stackelberg), then by lowest action index;
/// leader ties by lowest action index.
/// Throws NoFiniteCell if every leader action yields a sentinel payoff
/// for the leader after the follower's response.
Equilibrium solve_stackelberg(const BimatrixGame& game, PlayerId leader);

/// Like solve_stackelberg, additionally reporting whether any payoff tie
/// influenced the selection (follower indifference or leader indifference
/// at the top). Used by oracles to mark tie-break-dependent boundaries.
struct StackelbergSolution {
  Equilibrium equilibrium;
  bool tie_encountered = false;
};
StackelbergSolution solve_stackelberg_detail(const BimatrixGame& game,
                                             PlayerId leader);

/// Solves both leader assignments; in_conflict iff the two joint action
/// pairs differ.
ConflictVerdict detect_conflict(const BimatrixGame& game);

struct ConflictDetail {
  ConflictVerdict verdict;
  bool tie_encountered = false;
};
ConflictDetail detect_conflict_detail(const BimatrixGame& game);

/// Preference margins A = r211 - r121 and B = r122 - r212 of a 2x2 game
/// whose anti-diagonal cells are each player's unique optimum
/// (r211 > r121, r111, r221 and r122 > r212, r112, r222). The four
/// anti-diagonal payoffs must be finite; the comparison cells may be
/// sentinels (which order below every finite value).
/// Throws AssumptionViolated naming the first failed ordering.
std::pair<double, double> reward_gaps(const BimatrixGame& game);

}  // namespace conflict
