#pragma once

#include <stdexcept>
#include <string>

namespace conflict {

/// Every leader action leads to a negative-infinity payoff after the
/// follower's best response; no rational commitment exists.
struct NoFiniteCell : std::runtime_error {
  explicit NoFiniteCell(const std::string& what) : std::runtime_error(what) {}
};

/// The anti-diagonal preference orderings required by the gap analysis
/// do not hold for the given game.
struct AssumptionViolated : std::runtime_error {
  explicit AssumptionViolated(const std::string& what) : std::runtime_error(what) {}
};

/// alpha_row * alpha_col == 1 for the augmented transform; the fixed
/// point of the mutual-altruism system does not exist.
struct DegenerateCoefficients : std::runtime_error {
  explicit DegenerateCoefficients(const std::string& what) : std::runtime_error(what) {}
};

struct LengthMismatch : std::runtime_error {
  explicit LengthMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// Initial vehicle states already violate the separation ellipse.
struct InfeasibleStart : std::runtime_error {
  explicit InfeasibleStart(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace conflict
