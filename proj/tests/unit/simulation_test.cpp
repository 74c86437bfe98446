#include "smt/simulation.hpp"

#include <cmath>
#include <stdexcept>

#include "gtest/gtest.h"

namespace smt {
namespace {

SimConfig config_for(std::size_t size, double p_true, std::uint64_t reps,
                     Variant variant = Variant::Refined) {
  SimConfig c;
  c.subfamily_size = size;
  c.p_true = p_true;
  c.n_reps = reps;
  c.variant = variant;
  return c;
}

TEST(GenerateSubfamily, AllTrue) {
  StreamRng rng(1, 0);
  const auto family = generate_subfamily(rng, 5, 1.0, 0.1);
  ASSERT_EQ(family.pvalues.size(), 5u);
  for (std::size_t j = 0; j < 5; ++j) {
    EXPECT_TRUE(family.is_true_null[j]);
    EXPECT_GE(family.pvalues[j], 0.0);
    EXPECT_LT(family.pvalues[j], 1.0);
  }
}

TEST(GenerateSubfamily, AllFalse) {
  StreamRng rng(1, 0);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto family = generate_subfamily(rng, 5, 0.0, 0.1);
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_FALSE(family.is_true_null[j]);
      EXPECT_LE(family.pvalues[j], 0.1);
    }
  }
}

TEST(GenerateSubfamily, LabelFrequency) {
  StreamRng rng(9, 0);
  Subfamily family;
  std::uint64_t trues = 0;
  constexpr int draws = 1'000'000;
  for (int i = 0; i < draws / 1000; ++i) {
    generate_subfamily(rng, 1000, 0.5, 0.1, family);
    for (const bool t : family.is_true_null) trues += t ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(trues) / draws, 0.5, 0.0015);
}

TEST(RunTrial, NoTrueNullsNoFalseRejections) {
  const auto config = config_for(1, 0.0, 1);
  for (std::uint64_t i = 0; i < 20'000; ++i) {
    StreamRng rng(5, i);
    const auto outcome = run_trial(rng, config);
    EXPECT_FALSE(outcome.false_rejection);
    EXPECT_EQ(outcome.true_discoveries, outcome.steps_taken);
  }
}

TEST(RunTrial, DiscoveriesBoundedBySteps) {
  for (const std::size_t size : {1u, 3u, 10u}) {
    for (const double p_true : {0.2, 0.5, 0.9}) {
      const auto config = config_for(size, p_true, 1);
      for (std::uint64_t i = 0; i < 5'000; ++i) {
        StreamRng rng(8, i);
        const auto outcome = run_trial(rng, config);
        EXPECT_LE(outcome.true_discoveries, outcome.steps_taken);
        if (!outcome.false_rejection) EXPECT_EQ(outcome.true_discoveries, outcome.steps_taken);
      }
    }
  }
}

TEST(RunTrial, PathologicalConfigHitsCap) {
  SimConfig config = config_for(1, 0.0, 1);
  config.max_false_pval = 1e-6;
  StreamRng rng(1, 0);
  const auto outcome = run_trial(rng, config);
  EXPECT_TRUE(outcome.capped);
  EXPECT_EQ(outcome.steps_taken, kMaxSubfamiliesPerTrial);
}

TEST(RunTrial, RefinedDominatesPerTrial) {
  for (const std::size_t size : {2u, 5u, 20u}) {
    for (const double p_true : {0.1, 0.5}) {
      const auto refined = config_for(size, p_true, 1, Variant::Refined);
      const auto wp = config_for(size, p_true, 1, Variant::WebbPetitjean);
      for (std::uint64_t i = 0; i < 5'000; ++i) {
        StreamRng a(3, i);
        StreamRng b(3, i);
        const auto r = run_trial(a, refined);
        const auto w = run_trial(b, wp);
        EXPECT_GE(r.steps_taken, w.steps_taken);
        EXPECT_GE(r.true_discoveries, w.true_discoveries);
        EXPECT_GE(r.false_rejection, w.false_rejection);
      }
    }
  }
}

TEST(RunTreatment, SingleTrueNullFwerIsAlpha) {
  const auto result = run_treatment(config_for(1, 1.0, 200'000));
  const double se = std::sqrt(0.05 * 0.95 / 200'000);
  EXPECT_NEAR(result.fwer_hat, 0.05, 4 * se);
  EXPECT_EQ(result.mean_true_discoveries, 0.0);
  EXPECT_NEAR(result.fwer_se,
              std::sqrt(result.fwer_hat * (1 - result.fwer_hat) / 200'000), 1e-15);
}

TEST(RunTreatment, AllTrueClosedForm) {
  const double expected = 1.0 - std::pow(1.0 - 0.005, 10);
  const auto result = run_treatment(config_for(10, 1.0, 200'000));
  EXPECT_NEAR(result.fwer_hat, expected, 4 * std::sqrt(expected * (1 - expected) / 200'000));
}

TEST(RunTreatment, ThreadCountDoesNotChangeResult) {
  const auto config = config_for(10, 0.5, 20'001);
  const auto one = run_treatment(config, 1);
  for (const unsigned threads : {2u, 3u, 7u}) {
    const auto many = run_treatment(config, threads);
    EXPECT_EQ(one.fwer_hat, many.fwer_hat);
    EXPECT_EQ(one.fwer_se, many.fwer_se);
    EXPECT_EQ(one.mean_true_discoveries, many.mean_true_discoveries);
  }
}

TEST(RunTreatment, SeedChangesResult) {
  auto a = config_for(10, 0.5, 20'000);
  auto b = a;
  b.seed = 2;
  EXPECT_NE(run_treatment(a).mean_true_discoveries, run_treatment(b).mean_true_discoveries);
}

TEST(RunTreatment, RefinedPowerAtLeastWebbPetitjean) {
  for (const std::size_t size : {1u, 2u, 10u}) {
    const auto r = run_treatment(config_for(size, 0.3, 20'000, Variant::Refined));
    const auto w = run_treatment(config_for(size, 0.3, 20'000, Variant::WebbPetitjean));
    EXPECT_GE(r.mean_true_discoveries, w.mean_true_discoveries);
  }
}

TEST(RunTreatment, ValidatesConfig) {
  auto bad = config_for(1, 0.5, 10);
  bad.alpha = 0.0;
  EXPECT_THROW(run_treatment(bad), std::invalid_argument);
  bad = config_for(0, 0.5, 10);
  EXPECT_THROW(run_treatment(bad), std::invalid_argument);
  bad = config_for(1, 1.5, 10);
  EXPECT_THROW(run_treatment(bad), std::invalid_argument);
  bad = config_for(1, 0.5, 0);
  EXPECT_THROW(run_treatment(bad), std::invalid_argument);
  bad = config_for(1, 0.5, 10);
  bad.max_false_pval = 0.0;
  EXPECT_THROW(run_treatment(bad), std::invalid_argument);
}

TEST(RunGrid, FwerNonDecreasingInPTrue) {
  GridSpec grid;
  grid.sizes = {10};
  grid.n_reps = 50'000;
  const auto rows = run_grid(grid);
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double tol = 3 * std::hypot(rows[i].fwer_se, rows[i + 1].fwer_se);
    EXPECT_LE(rows[i].fwer_hat, rows[i + 1].fwer_hat + tol)
        << "p_true " << rows[i].config.p_true;
  }
}

TEST(RunGrid, ShapeAndOrdering) {
  GridSpec grid;
  grid.n_reps = 10;
  grid.variants = {Variant::Refined, Variant::WebbPetitjean};
  const auto rows = run_grid(grid);
  ASSERT_EQ(rows.size(), 80u);
  EXPECT_EQ(rows.front().config.variant, Variant::Refined);
  EXPECT_EQ(rows.front().config.subfamily_size, 1u);
  EXPECT_EQ(rows[9].config.p_true, 1.0);
  EXPECT_EQ(rows[10].config.subfamily_size, 10u);
  EXPECT_EQ(rows.back().config.variant, Variant::WebbPetitjean);

  grid.sizes = {1};
  grid.p_trues = {1.0};
  grid.variants = {Variant::Refined};
  EXPECT_EQ(run_grid(grid).size(), 1u);

  grid.sizes.clear();
  EXPECT_THROW(run_grid(grid), std::invalid_argument);
}

}  // namespace
}  // namespace smt
