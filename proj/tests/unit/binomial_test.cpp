#include "smt/binomial.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

namespace smt::binomial {
namespace {

// Distribution of the success count built one trial at a time.
std::vector<long double> convolved_pmf(int n, long double p) {
  std::vector<long double> dist{1.0L};
  for (int t = 0; t < n; ++t) {
    std::vector<long double> next(dist.size() + 1, 0.0L);
    for (std::size_t k = 0; k < dist.size(); ++k) {
      next[k] += dist[k] * (1.0L - p);
      next[k + 1] += dist[k] * p;
    }
    dist.swap(next);
  }
  return dist;
}

double rel_err(double actual, double expected) {
  return std::fabs(actual - expected) / std::fabs(expected);
}

TEST(Choose, SmallValues) {
  EXPECT_EQ(choose(17, 0), 1u);
  EXPECT_EQ(choose(17, 4), 2380u);
  EXPECT_EQ(choose(13, 2), 78u);
  EXPECT_EQ(choose(64, 32), 1832624140942590534ull);
  EXPECT_THROW(choose(65, 1), std::invalid_argument);
  EXPECT_THROW(choose(5, 6), std::invalid_argument);
}

TEST(Pmf, FairCoinAnchors) {
  EXPECT_EQ(pmf({17, 0.5}, 17), std::ldexp(1.0, -17));
  EXPECT_LT(rel_err(pmf({17, 0.5}, 17), 7.6294e-06), 5e-3);
  EXPECT_LT(rel_err(pmf({17, 0.5}, 14), 0.0052), 5e-3);
  EXPECT_EQ(pmf({1, 0.5}, 0), 0.5);
}

TEST(Pmf, DegenerateProbabilities) {
  EXPECT_EQ(pmf({5, 0.0}, 0), 1.0);
  EXPECT_EQ(pmf({5, 0.0}, 3), 0.0);
  EXPECT_EQ(pmf({5, 1.0}, 5), 1.0);
}

TEST(Pmf, RejectsBadArguments) {
  EXPECT_THROW(pmf({17, 0.5}, 18), std::invalid_argument);
  EXPECT_THROW(pmf({17, 0.5}, -1), std::invalid_argument);
  EXPECT_THROW(pmf({0, 0.5}, 0), std::invalid_argument);
  EXPECT_THROW(pmf({65, 0.5}, 0), std::invalid_argument);
  EXPECT_THROW(pmf({5, 1.5}, 0), std::invalid_argument);
  EXPECT_THROW(upper_tail({5, 0.5}, 6), std::invalid_argument);
  EXPECT_THROW(lower_tail({5, 0.5}, -1), std::invalid_argument);
}

TEST(UpperTail, HeadsBoundAnchors) {
  // Exact values from tests/oracles/coin_oracle.py.
  EXPECT_LT(rel_err(upper_tail({17, 0.1}, 17), 1.0e-17), 1e-12);
  EXPECT_LT(rel_err(upper_tail({17, 0.1}, 16), 1.54e-15), 1e-12);
  EXPECT_LT(rel_err(upper_tail({17, 0.1}, 5), 0.022144215841833698), 1e-12);
  EXPECT_LT(rel_err(upper_tail({17, 0.1}, 5), 0.0221), 5e-3);
  EXPECT_EQ(upper_tail({17, 0.1}, 0), 1.0);
}

TEST(LowerTail, FairCoinAnchors) {
  EXPECT_DOUBLE_EQ(lower_tail({17, 0.5}, 4), 3214.0 / 131072.0);
  EXPECT_LT(rel_err(lower_tail({17, 0.5}, 4), 0.0245), 5e-3);
  EXPECT_EQ(lower_tail({17, 0.5}, 17), 1.0);
  EXPECT_DOUBLE_EQ(lower_tail({13, 0.5}, 2), 92.0 / 8192.0);
}

TEST(Binomial, AgreesWithConvolution) {
  for (int n : {1, 2, 7, 13, 17, 33, 64}) {
    for (double p : {0.0, 0.1, 0.3, 0.5, 0.9, 1.0}) {
      const auto dist = convolved_pmf(n, p);
      long double lo = 0.0L;
      for (int k = 0; k <= n; ++k) {
        lo += dist[static_cast<std::size_t>(k)];
        EXPECT_NEAR(pmf({n, p}, k), static_cast<double>(dist[static_cast<std::size_t>(k)]),
                    1e-15)
            << "n=" << n << " p=" << p << " k=" << k;
        EXPECT_NEAR(lower_tail({n, p}, k), static_cast<double>(lo), 1e-14);
      }
    }
  }
}

TEST(Binomial, Identities) {
  for (int n : {1, 5, 13, 17, 40, 64}) {
    for (double p : {0.1, 0.25, 0.5, 0.77}) {
      const BinomialSpec spec{n, p};
      double total = 0.0;
      for (int k = 0; k <= n; ++k) total += pmf(spec, k);
      EXPECT_NEAR(total, 1.0, 1e-12);
      for (int k = 0; k < n; ++k) {
        EXPECT_NEAR(lower_tail(spec, k) + upper_tail(spec, k + 1), 1.0, 1e-12);
        EXPECT_LE(lower_tail(spec, k), lower_tail(spec, k + 1));
        EXPECT_GE(upper_tail(spec, k), upper_tail(spec, k + 1));
      }
    }
    for (int k = 0; k <= n; ++k) {
      EXPECT_EQ(pmf({n, 0.5}, k), pmf({n, 0.5}, n - k));
    }
  }
}

}  // namespace
}  // namespace smt::binomial
