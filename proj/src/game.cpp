#include "conflict/game.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace conflict {

namespace {

std::vector<std::string> default_labels(char prefix, int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::string format_reward(const Reward& r) {
  if (r.is_neg_inf()) return "-inf";
  std::ostringstream os;
  os << r.value();
  return os.str();
}

Reward parse_reward(const std::string& tok, int line_no) {
  if (tok == "-inf") return Reward::neg_inf();
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return Reward(v);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": bad reward token '" + tok + "'");
  }
}

}  // namespace

Reward::Reward(double value) : value_(value), neg_inf_(false) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument(
        "Reward requires a finite value; use Reward::neg_inf() for the sentinel");
  }
}

double Reward::value() const {
  if (neg_inf_) throw std::logic_error("value() called on the -inf sentinel");
  return value_;
}

bool operator<(const Reward& a, const Reward& b) {
  if (a.neg_inf_) return !b.neg_inf_;
  if (b.neg_inf_) return false;
  return a.value_ < b.value_;
}

bool operator==(const Reward& a, const Reward& b) {
  if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
  return a.value_ == b.value_;
}

PlayerId other(PlayerId p) {
  return p == PlayerId::Row ? PlayerId::Col : PlayerId::Row;
}

std::string to_string(PlayerId p) { return p == PlayerId::Row ? "row" : "col"; }

BimatrixGame::BimatrixGame(std::vector<std::string> row_actions,
                           std::vector<std::string> col_actions,
                           std::vector<RewardPair> cells)
    : row_actions_(std::move(row_actions)),
      col_actions_(std::move(col_actions)),
      cells_(std::move(cells)) {
  if (row_actions_.empty() || col_actions_.empty()) {
    throw std::invalid_argument("game needs at least one action per player");
  }
  if (cells_.size() != row_actions_.size() * col_actions_.size()) {
    throw std::invalid_argument("reward grid does not match action counts");
  }
}

BimatrixGame BimatrixGame::make2x2(RewardPair r11, RewardPair r12,
                                   RewardPair r21, RewardPair r22) {
  return BimatrixGame(default_labels('A', 2), default_labels('B', 2),
                      {r11, r12, r21, r22});
}

const RewardPair& BimatrixGame::at(int row, int col) const {
  return cells_.at(static_cast<std::size_t>(row) * col_actions_.size() + col);
}

RewardPair& BimatrixGame::at(int row, int col) {
  return cells_.at(static_cast<std::size_t>(row) * col_actions_.size() + col);
}

void BimatrixGame::set_labels(std::vector<std::string> row_actions,
                              std::vector<std::string> col_actions) {
  if (row_actions.size() != row_actions_.size() ||
      col_actions.size() != col_actions_.size()) {
    throw std::invalid_argument("label counts do not match game dimensions");
  }
  row_actions_ = std::move(row_actions);
  col_actions_ = std::move(col_actions);
}

const Reward& BimatrixGame::payoff(PlayerId p, int row, int col) const {
  const RewardPair& cell = at(row, col);
  return p == PlayerId::Row ? cell.row : cell.col;
}

BimatrixGame BimatrixGame::transposed() const {
  std::vector<RewardPair> cells;
  cells.reserve(cells_.size());
  for (int n = 0; n < cols(); ++n) {
    for (int m = 0; m < rows(); ++m) {
      const RewardPair& c = at(m, n);
      cells.push_back({c.col, c.row});
    }
  }
  return BimatrixGame(col_actions_, row_actions_, std::move(cells));
}

BimatrixGame BimatrixGame::parse(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::vector<std::string> row_labels, col_labels;
  int rows = -1, cols = -1;
  std::vector<RewardPair> cells;
  int data_rows_seen = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;

    if (first == "rows:" || first == "cols:") {
      std::vector<std::string> labels;
      std::string tok;
      while (ls >> tok) labels.push_back(tok);
      (first == "rows:" ? row_labels : col_labels) = std::move(labels);
      continue;
    }

    if (rows < 0) {
      std::istringstream hs(line);
      if (!(hs >> rows >> cols) || rows < 1 || cols < 1) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected dimensions 'M N'");
      }
      cells.reserve(static_cast<std::size_t>(rows) * cols);
      continue;
    }

    if (data_rows_seen >= rows) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": more data rows than declared");
    }
    std::istringstream ds(line);
    std::string cell;
    for (int n = 0; n < cols; ++n) {
      if (!(ds >> cell)) {
        throw ParseError("line " + std::to_string(line_no) + ": expected " +
                         std::to_string(cols) + " cells");
      }
      auto comma = cell.find(',');
      if (comma == std::string::npos) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": cell '" + cell + "' is not 'r1,r2'");
      }
      cells.push_back({parse_reward(cell.substr(0, comma), line_no),
                       parse_reward(cell.substr(comma + 1), line_no)});
    }
    if (ds >> cell) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(cols) + " cells, found more");
    }
    ++data_rows_seen;
  }

  if (rows < 0) throw ParseError("empty game file");
  if (data_rows_seen != rows) {
    throw ParseError("expected " + std::to_string(rows) + " data rows, got " +
                     std::to_string(data_rows_seen));
  }
  if (row_labels.empty()) row_labels = default_labels('A', rows);
  if (col_labels.empty()) col_labels = default_labels('B', cols);
  if (static_cast<int>(row_labels.size()) != rows ||
      static_cast<int>(col_labels.size()) != cols) {
    throw ParseError("label counts do not match declared dimensions");
  }
  return BimatrixGame(std::move(row_labels), std::move(col_labels),
                      std::move(cells));
}

BimatrixGame BimatrixGame::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open game file '" + path + "'");
  return parse(in);
}

std::string BimatrixGame::format() const {
  std::ostringstream os;
  os << "rows:";
  for (const auto& l : row_actions_) os << ' ' << l;
  os << "\ncols:";
  for (const auto& l : col_actions_) os << ' ' << l;
  os << '\n' << rows() << ' ' << cols() << '\n';
  for (int m = 0; m < rows(); ++m) {
    for (int n = 0; n < cols(); ++n) {
      if (n > 0) os << ' ';
      os << format_reward(at(m, n).row) << ',' << format_reward(at(m, n).col);
    }
    os << '\n';
  }
  return os.str();
}

namespace {

// Follower best response within one leader action: maximizes the
// follower's payoff; ties go to the cell maximizing the leader's payoff,
// then to the lowest index. Reports whether any tie occurred.
struct BestResponse {
  int action = 0;
  bool tie = false;
};

BestResponse follower_best_response(const BimatrixGame& game, PlayerId leader,
                                    int leader_action) {
  PlayerId follower = other(leader);
  int n_options = leader == PlayerId::Row ? game.cols() : game.rows();
  auto cell_payoff = [&](PlayerId p, int follower_action) -> const Reward& {
    int row = leader == PlayerId::Row ? leader_action : follower_action;
    int col = leader == PlayerId::Row ? follower_action : leader_action;
    return game.payoff(p, row, col);
  };

  BestResponse br;
  for (int k = 1; k < n_options; ++k) {
    const Reward& cand = cell_payoff(follower, k);
    const Reward& best = cell_payoff(follower, br.action);
    if (best < cand) {
      br.action = k;
    } else if (cand == best) {
      br.tie = true;
      if (cell_payoff(leader, br.action) < cell_payoff(leader, k)) {
        br.action = k;
      }
    }
  }
  return br;
}

}  // namespace

StackelbergSolution solve_stackelberg_detail(const BimatrixGame& game,
                                             PlayerId leader) {
  int n_commitments = leader == PlayerId::Row ? game.rows() : game.cols();

  StackelbergSolution sol;
  sol.equilibrium.leader = leader;
  int best_commit = -1;
  BestResponse best_br;
  Reward best_value = Reward::neg_inf();

  for (int a = 0; a < n_commitments; ++a) {
    BestResponse br = follower_best_response(game, leader, a);
    sol.tie_encountered = sol.tie_encountered || br.tie;
    int row = leader == PlayerId::Row ? a : br.action;
    int col = leader == PlayerId::Row ? br.action : a;
    const Reward& value = game.payoff(leader, row, col);
    if (best_commit < 0 || best_value < value) {
      best_commit = a;
      best_br = br;
      best_value = value;
    } else if (value == best_value && value.is_finite()) {
      sol.tie_encountered = true;  // leader indifferent at the top
    }
  }

  if (best_value.is_neg_inf()) {
    throw NoFiniteCell("every " + to_string(leader) +
                       "-leader commitment ends in the -inf sentinel");
  }

  Equilibrium& eq = sol.equilibrium;
  eq.row_action = leader == PlayerId::Row ? best_commit : best_br.action;
  eq.col_action = leader == PlayerId::Row ? best_br.action : best_commit;
  eq.leader_value = best_value;
  eq.follower_value = game.payoff(other(leader), eq.row_action, eq.col_action);
  return sol;
}

Equilibrium solve_stackelberg(const BimatrixGame& game, PlayerId leader) {
  return solve_stackelberg_detail(game, leader).equilibrium;
}

ConflictDetail detect_conflict_detail(const BimatrixGame& game) {
  StackelbergSolution row_led = solve_stackelberg_detail(game, PlayerId::Row);
  StackelbergSolution col_led = solve_stackelberg_detail(game, PlayerId::Col);
  ConflictDetail out;
  out.verdict.row_led = row_led.equilibrium;
  out.verdict.col_led = col_led.equilibrium;
  out.verdict.in_conflict =
      row_led.equilibrium.row_action != col_led.equilibrium.row_action ||
      row_led.equilibrium.col_action != col_led.equilibrium.col_action;
  out.tie_encountered = row_led.tie_encountered || col_led.tie_encountered;
  return out;
}

ConflictVerdict detect_conflict(const BimatrixGame& game) {
  return detect_conflict_detail(game).verdict;
}

std::pair<double, double> reward_gaps(const BimatrixGame& game) {
  if (game.rows() != 2 || game.cols() != 2) {
    throw AssumptionViolated("reward gaps are defined for 2x2 games only");
  }
  // r_{mnk}: m = row action, n = col action, k = player (1 = row, 2 = col).
  const Reward& r111 = game.at(0, 0).row;
  const Reward& r121 = game.at(0, 1).row;
  const Reward& r211 = game.at(1, 0).row;
  const Reward& r221 = game.at(1, 1).row;
  const Reward& r112 = game.at(0, 0).col;
  const Reward& r122 = game.at(0, 1).col;
  const Reward& r212 = game.at(1, 0).col;
  const Reward& r222 = game.at(1, 1).col;

  if (!r211.is_finite() || !r121.is_finite() || !r122.is_finite() ||
      !r212.is_finite()) {
    throw AssumptionViolated("anti-diagonal payoffs must be finite");
  }
  auto require = [](const Reward& lhs, const Reward& rhs, const char* name) {
    if (!(rhs < lhs)) {
      throw AssumptionViolated(std::string("ordering ") + name + " failed");
    }
  };
  require(r211, r121, "r211 > r121");
  require(r211, r111, "r211 > r111");
  require(r211, r221, "r211 > r221");
  require(r122, r212, "r122 > r212");
  require(r122, r112, "r122 > r112");
  require(r122, r222, "r122 > r222");

  return {r211.value() - r121.value(), r122.value() - r212.value()};
}

}  // namespace conflict
