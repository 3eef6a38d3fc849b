#include <doctest.h>

#include <cmath>
#include <random>

#include "conflict/transforms.hpp"

using namespace conflict;

namespace {

constexpr double kHalfPi = 1.5707963267948966;

BimatrixGame lane_change_game() {
  RewardPair sentinel{Reward::neg_inf(), Reward::neg_inf()};
  BimatrixGame g = BimatrixGame::make2x2(sentinel, {Reward(0.0), Reward(1.0)},
                                         {Reward(1.0), Reward(0.0)}, sentinel);
  g.set_labels({"LCB", "LCA"}, {"GW", "C"});
  return g;
}

double augmented_closed_form(double r1, double r2, double a1, double a2) {
  return ((1.0 - a1) * r1 + a1 * (1.0 - a2) * r2) / (1.0 - a1 * a2);
}

}  // namespace

TEST_CASE("transform_pair endpoint values") {
  CHECK(transform_pair(1.0, 0.0, 0.0, 0.7, TransformKind::Altruism) ==
        doctest::Approx(1.0));  // wholly egoistic
  CHECK(transform_pair(1.0, 0.0, 1.0, 0.7, TransformKind::Altruism) ==
        doctest::Approx(0.0));  // wholly altruistic
  CHECK(transform_pair(1.0, 1.0, 1.0, 1.0, TransformKind::PureAltruism) ==
        doctest::Approx(2.0));  // cooperating agents share the summed reward
  CHECK(transform_pair(1.0, 0.0, 0.0, 0.0, TransformKind::Svo) ==
        doctest::Approx(1.0));  // theta = 0 keeps the own reward
  CHECK(transform_pair(3.0, -2.0, 0.9, 0.4, TransformKind::Baseline) ==
        doctest::Approx(3.0));
}

TEST_CASE("augmented value matches the fixed point of the iteration") {
  // Expected value computed by running the recurrence to convergence.
  auto [it1, it2] = iterate_altruism(1.0, 0.0, 0.5, 0.5, 10000);
  CHECK(it1 == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(it2 == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(transform_pair(1.0, 0.0, 0.5, 0.5, TransformKind::AugmentedAltruism) ==
        doctest::Approx(2.0 / 3.0));
}

TEST_CASE("augmented transform rejects the degenerate coefficient pair") {
  CHECK_THROWS_AS(transform_pair(1.0, 0.0, 1.0, 1.0, TransformKind::AugmentedAltruism),
                  DegenerateCoefficients);
  CHECK_THROWS_AS(iterate_altruism(1.0, 0.0, 1.0, 1.0, 10),
                  DegenerateCoefficients);
  SocialParams params{TransformKind::AugmentedAltruism, 1.0, 1.0};
  CHECK_THROWS_AS(params.validate(), DegenerateCoefficients);
}

TEST_CASE("iterate_altruism step counts") {
  auto [x0, y0] = iterate_altruism(1.0, 0.0, 0.5, 0.5, 0);
  CHECK(x0 == doctest::Approx(1.0));
  CHECK(y0 == doctest::Approx(0.0));

  auto [x200, y200] = iterate_altruism(1.0, 0.0, 0.5, 0.5, 200);
  CHECK(x200 == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(y200 == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  auto [xe, ye] = iterate_altruism(4.0, -7.0, 0.0, 0.0, 123);
  CHECK(xe == doctest::Approx(4.0));  // egoistic fixed point
  CHECK(ye == doctest::Approx(-7.0));
}

TEST_CASE("fixed-point agreement across sampled coefficients") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> alpha(0.0, 0.99);
  std::uniform_real_distribution<double> reward(-10.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    double a1 = alpha(rng), a2 = alpha(rng);
    double r1 = reward(rng), r2 = reward(rng);
    auto [x, y] = iterate_altruism(r1, r2, a1, a2, 50000);
    CHECK(x == doctest::Approx(augmented_closed_form(r1, r2, a1, a2)).epsilon(1e-9));
    CHECK(y == doctest::Approx(augmented_closed_form(r2, r1, a2, a1)).epsilon(1e-9));
  }
}

TEST_CASE("augmented form degenerations") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> alpha(0.0, 0.99);
  std::uniform_real_distribution<double> reward(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    double a = alpha(rng);
    double r1 = reward(rng), r2 = reward(rng);
    // alpha_i = 0 keeps the own reward regardless of the other coefficient.
    CHECK(transform_pair(r1, r2, 0.0, a, TransformKind::AugmentedAltruism) ==
          doctest::Approx(r1));
    // alpha_-i = 0 reduces the augmented form to the plain blend.
    CHECK(transform_pair(r1, r2, a, 0.0, TransformKind::AugmentedAltruism) ==
          doctest::Approx(transform_pair(r1, r2, a, 0.0, TransformKind::Altruism)));
  }
}

TEST_CASE("altruism blend stays within the reward envelope") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> alpha(0.0, 1.0);
  std::uniform_real_distribution<double> reward(-10.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    double a = alpha(rng);
    double r1 = reward(rng), r2 = reward(rng);
    double v = transform_pair(r1, r2, a, alpha(rng), TransformKind::Altruism);
    CHECK(v >= std::min(r1, r2) - 1e-12);
    CHECK(v <= std::max(r1, r2) + 1e-12);
  }
}

TEST_CASE("svo endpoints") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> reward(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    double r1 = reward(rng), r2 = reward(rng);
    CHECK(transform_pair(r1, r2, 0.0, 0.0, TransformKind::Svo) == doctest::Approx(r1));
    CHECK(transform_pair(r1, r2, kHalfPi, 0.0, TransformKind::Svo) ==
          doctest::Approx(r2));
  }
}

TEST_CASE("shared positive scaling commutes with every transform") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> alpha(0.0, 0.95);
  std::uniform_real_distribution<double> angle(0.0, kHalfPi);
  std::uniform_real_distribution<double> reward(-10.0, 10.0);
  std::uniform_real_distribution<double> scale(0.1, 8.0);
  for (int trial = 0; trial < 200; ++trial) {
    double r1 = reward(rng), r2 = reward(rng), c = scale(rng);
    for (TransformKind kind :
         {TransformKind::Baseline, TransformKind::PureAltruism,
          TransformKind::Altruism, TransformKind::AugmentedAltruism,
          TransformKind::Svo}) {
      double a1 = kind == TransformKind::Svo ? angle(rng) : alpha(rng);
      double a2 = kind == TransformKind::Svo ? angle(rng) : alpha(rng);
      double plain = transform_pair(r1, r2, a1, a2, kind);
      double scaled = transform_pair(c * r1, c * r2, a1, a2, kind);
      CHECK(scaled == doctest::Approx(c * plain).epsilon(1e-9));
    }
  }
}

TEST_CASE("transform_game keeps baseline games identical") {
  BimatrixGame g = lane_change_game();
  BimatrixGame t = transform_game(g, {TransformKind::Baseline, 0.3, 0.9});
  for (int m = 0; m < g.rows(); ++m) {
    for (int n = 0; n < g.cols(); ++n) {
      CHECK(g.at(m, n).row == t.at(m, n).row);
      CHECK(g.at(m, n).col == t.at(m, n).col);
    }
  }
  CHECK(t.row_actions() == g.row_actions());
}

TEST_CASE("transform_game applies the blend and maps sentinels to sentinels") {
  BimatrixGame g = lane_change_game();
  BimatrixGame t = transform_game(g, {TransformKind::Altruism, 1.0, 0.0});
  // Fully altruistic row player: its finite payoffs become the opponent's.
  CHECK(t.at(0, 1).row.value() == doctest::Approx(1.0));  // (LCB, C)
  CHECK(t.at(1, 0).row.value() == doctest::Approx(0.0));  // (LCA, GW)
  CHECK(t.at(0, 1).col.value() == doctest::Approx(1.0));  // col unchanged
  CHECK(t.at(1, 0).col.value() == doctest::Approx(0.0));
  CHECK(t.at(0, 0).row.is_neg_inf());
  CHECK(t.at(0, 0).col.is_neg_inf());
  CHECK(t.at(1, 1).row.is_neg_inf());
}

TEST_CASE("augmented transform_game with zero coefficients is the identity") {
  BimatrixGame g = BimatrixGame::make2x2({Reward(1.0), Reward(2.0)},
                                         {Reward(-3.0), Reward(0.5)},
                                         {Reward(4.0), Reward(-1.0)},
                                         {Reward(0.0), Reward(0.0)});
  BimatrixGame t = transform_game(g, {TransformKind::AugmentedAltruism, 0.0, 0.0});
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) {
      CHECK(t.at(m, n).row.value() == doctest::Approx(g.at(m, n).row.value()));
      CHECK(t.at(m, n).col.value() == doctest::Approx(g.at(m, n).col.value()));
    }
  }
}

TEST_CASE("pure altruism: shared coefficient vs per-player reading") {
  BimatrixGame g = BimatrixGame::make2x2({Reward(1.0), Reward(2.0)},
                                         {Reward(-3.0), Reward(0.5)},
                                         {Reward(4.0), Reward(-1.0)},
                                         {Reward(0.0), Reward(0.0)});
  // transform_game: alpha_row is the single shared alpha of the pure form.
  BimatrixGame shared = transform_game(g, {TransformKind::PureAltruism, 0.25, 0.9});
  CHECK(shared.at(0, 0).row.value() == doctest::Approx(1.0 + 0.25 * 2.0));
  CHECK(shared.at(0, 0).col.value() == doctest::Approx(2.0 + 0.25 * 1.0));

  // Per-player reading: each player weighs the other with its own alpha.
  BimatrixGame per = transform_game_per_player(g, TransformKind::PureAltruism,
                                               0.25, 0.9);
  CHECK(per.at(0, 0).row.value() == doctest::Approx(1.0 + 0.25 * 2.0));
  CHECK(per.at(0, 0).col.value() == doctest::Approx(2.0 + 0.9 * 1.0));
}

TEST_CASE("social parameter validation") {
  CHECK_THROWS_AS((SocialParams{TransformKind::Altruism, -0.1, 0.5}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((SocialParams{TransformKind::Svo, 2.0, 0.5}.validate()),
                  std::invalid_argument);
  CHECK_NOTHROW((SocialParams{TransformKind::Baseline, 9.0, -4.0}.validate()));
  CHECK_NOTHROW((SocialParams{TransformKind::Svo, 0.0, kHalfPi}.validate()));
}
