#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "conflict/analysis.hpp"

using namespace conflict;

namespace {

constexpr double kHalfPi = 1.5707963267948966;

const TransformKind kAllModels[] = {
    TransformKind::Baseline, TransformKind::PureAltruism, TransformKind::Svo,
    TransformKind::Altruism, TransformKind::AugmentedAltruism};

BimatrixGame finite_lane_change(double off = -5.0) {
  return BimatrixGame::make2x2({Reward(off), Reward(off)},
                               {Reward(0.0), Reward(1.0)},
                               {Reward(1.0), Reward(0.0)},
                               {Reward(off), Reward(off)});
}

}  // namespace

TEST_CASE("analytic AoC reproduces the lane-change column") {
  RewardGaps unit{1.0, 1.0};
  CHECK(aoc_analytic(TransformKind::Baseline, unit) == doctest::Approx(1.0));
  CHECK(aoc_analytic(TransformKind::PureAltruism, unit) == doctest::Approx(1.0));
  CHECK(aoc_analytic(TransformKind::Svo, unit) == doctest::Approx(0.5));
  CHECK(aoc_analytic(TransformKind::Altruism, unit) == doctest::Approx(0.5));
  CHECK(aoc_analytic(TransformKind::AugmentedAltruism, unit) ==
        doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-12));
  // The augmented value rounds to the tabulated 0.38623 within 5e-4.
  CHECK(std::abs(aoc_analytic(TransformKind::AugmentedAltruism, unit) - 0.38623) <
        5e-4);
}

TEST_CASE("pure altruism takes the smaller gap ratio") {
  CHECK(aoc_analytic(TransformKind::PureAltruism, {2.0, 1.0}) ==
        doctest::Approx(0.5));
  CHECK(aoc_analytic(TransformKind::PureAltruism, {1.0, 2.0}) ==
        doctest::Approx(0.5));
}

TEST_CASE("conflict predicate examples") {
  RewardGaps unit{1.0, 1.0};
  CHECK(conflict_predicate(TransformKind::Altruism, unit, 0.9, 0.9));
  CHECK_FALSE(conflict_predicate(TransformKind::Altruism, unit, 0.9, 0.1));
  CHECK_FALSE(conflict_predicate(TransformKind::AugmentedAltruism, unit, 0.0, 0.3));
  CHECK_FALSE(conflict_predicate(TransformKind::AugmentedAltruism, unit, 1.0, 0.99));
  CHECK(conflict_predicate(TransformKind::Svo, unit, 0.1, 0.1));
  CHECK(conflict_predicate(TransformKind::Baseline, unit, 0.5, 0.5));
}

TEST_CASE("equilibrium oracle agrees with the section-5 walkthrough") {
  BimatrixGame g = finite_lane_change();
  CHECK(equilibrium_conflict_oracle(g, TransformKind::Baseline, 0.0, 0.0) ==
        OracleVerdict::Conflict);
  // A fully altruistic row player defers; the conflict dissolves.
  CHECK(equilibrium_conflict_oracle(g, TransformKind::Altruism, 1.0, 0.0) ==
        OracleVerdict::NoConflict);
  // Both players exactly at the threshold: tie-break territory.
  CHECK(equilibrium_conflict_oracle(g, TransformKind::Altruism, 0.5, 0.5) ==
        OracleVerdict::Boundary);
}

TEST_CASE("canonical game satisfies the gap preconditions") {
  RewardGaps gaps{2.5, 0.4};
  BimatrixGame g = canonical_conflict_game(gaps);
  auto [A, B] = reward_gaps(g);
  CHECK(A == doctest::Approx(gaps.A));
  CHECK(B == doctest::Approx(gaps.B));
  CHECK(detect_conflict(g).in_conflict);  // untransformed game: always conflict
}

TEST_CASE("grid oracle matches the closed forms at moderate resolution") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> gap(0.1, 10.0);
  for (int trial = 0; trial < 4; ++trial) {
    RewardGaps gaps{gap(rng), gap(rng)};
    for (TransformKind model : kAllModels) {
      OracleEstimate est = aoc_oracle(model, gaps, 250);
      double analytic = aoc_analytic(model, gaps);
      CHECK(std::abs(est.fraction - analytic) < 0.015);
      CHECK(est.boundary_cells <= est.total_cells / 100);
    }
  }
}

TEST_CASE("baseline oracle is exactly one everywhere") {
  OracleEstimate est = aoc_oracle(TransformKind::Baseline, {3.0, 0.7}, 100);
  CHECK(est.fraction == doctest::Approx(1.0));
  CHECK(est.conflict_cells == 100 * 100);
}

TEST_CASE("predicate and equilibrium oracle agree off the boundaries") {
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> gap(0.1, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> model_pick(0, 4);
  int boundaries = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    TransformKind model = kAllModels[model_pick(rng)];
    RewardGaps gaps{gap(rng), gap(rng)};
    double scale = model == TransformKind::Svo ? kHalfPi : 1.0;
    double a1 = unit(rng) * scale, a2 = unit(rng) * scale;
    OracleVerdict verdict = equilibrium_conflict_oracle(
        canonical_conflict_game(gaps), model, a1, a2);
    if (verdict == OracleVerdict::Boundary) {
      ++boundaries;
      continue;
    }
    CHECK(conflict_predicate(model, gaps, a1, a2) ==
          (verdict == OracleVerdict::Conflict));
  }
  CHECK(boundaries < 100);
}

TEST_CASE("analytic AoC is symmetric, bounded, and baseline-dominated") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> gap(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    RewardGaps gaps{gap(rng), gap(rng)};
    RewardGaps swapped{gaps.B, gaps.A};
    for (TransformKind model : kAllModels) {
      double v = aoc_analytic(model, gaps);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      CHECK(v <= aoc_analytic(TransformKind::Baseline, gaps));
      CHECK(v == doctest::Approx(aoc_analytic(model, swapped)).epsilon(1e-9));
    }
  }
}

TEST_CASE("rasterize_region baseline and altruism patterns") {
  ConflictRaster base = rasterize_region(TransformKind::Baseline, {1.0, 1.0}, 4);
  CHECK(base.conflict_fraction() == doctest::Approx(1.0));

  // 2x2 raster samples (0.25, 0.75): altruism thresholds sit at 0.5, so
  // conflict holds exactly on the main diagonal cells.
  ConflictRaster alt = rasterize_region(TransformKind::Altruism, {1.0, 1.0}, 2);
  CHECK(alt.at(0, 0));
  CHECK(alt.at(1, 1));
  CHECK_FALSE(alt.at(0, 1));
  CHECK_FALSE(alt.at(1, 0));
}

TEST_CASE("augmented region is a single band in alpha1 strips") {
  ConflictRaster r = rasterize_region(TransformKind::AugmentedAltruism,
                                      {1.0, 1.0}, 128);
  for (int i = 0; i < r.resolution; ++i) {
    int transitions = 0;
    for (int j = 1; j < r.resolution; ++j) {
      transitions += r.at(i, j) != r.at(i, j - 1);
    }
    CHECK(transitions <= 2);  // one contiguous run per strip
  }
  CHECK(r.conflict_fraction() ==
        doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(0.05));
}

TEST_CASE("raster exports write parsable PGM and CSV") {
  ConflictRaster r = rasterize_region(TransformKind::Altruism, {1.0, 1.0}, 2);
  std::string pgm_path = "test_region_out.pgm";
  std::string csv_path = "test_region_out.csv";
  write_raster_pgm(r, pgm_path);
  write_raster_csv(r, csv_path);

  std::ifstream pgm(pgm_path);
  std::string magic;
  int w, h, maxval;
  pgm >> magic >> w >> h >> maxval;
  CHECK(magic == "P2");
  CHECK(w == 2);
  CHECK(h == 2);
  CHECK(maxval == 255);
  int v00, v10, v01, v11;  // top row first: high alpha2 band
  pgm >> v00 >> v10 >> v01 >> v11;
  CHECK(v00 == 0);
  CHECK(v10 == 255);
  CHECK(v01 == 255);
  CHECK(v11 == 0);

  std::ifstream csv(csv_path);
  std::string header, line1;
  std::getline(csv, header);
  std::getline(csv, line1);
  CHECK(header == "alpha1,alpha2,conflict");
  CHECK(line1 == "0.250000,0.250000,1");

  std::remove(pgm_path.c_str());
  std::remove(csv_path.c_str());
}

TEST_CASE("aoc_curve endpoints and limits") {
  auto aug = aoc_curve(TransformKind::AugmentedAltruism, 1.0, 1.0, 1.0, 1);
  CHECK(aug.size() == 1);
  CHECK(aug[0].second == doctest::Approx(0.386294).epsilon(1e-4));

  auto alt = aoc_curve(TransformKind::Altruism, 1.0, 1e-4, 1.0, 2);
  CHECK(alt.front().second < 5e-4);  // 2AB/(A+B)^2 -> 0 as A -> 0

  CHECK_THROWS_AS(aoc_curve(TransformKind::Altruism, 1.0, 0.0, 1.0, 2),
                  std::invalid_argument);
}

TEST_CASE("augmented altruism dominates in the middle of the gap range") {
  // Sampled counterpart of the published minimal-AoC windows.
  for (double A = 0.4; A <= 2.5; A += (2.5 - 0.4) / 99.0) {
    double aug = aoc_analytic(TransformKind::AugmentedAltruism, {A, 1.0});
    CHECK(aug <= aoc_analytic(TransformKind::Altruism, {A, 1.0}) + 1e-12);
    CHECK(aug <= aoc_analytic(TransformKind::Svo, {A, 1.0}) + 1e-12);
  }
}
