// Exact binomial probabilities for small trial counts (n <= 64).
//
// Coefficients are computed in 128-bit integer arithmetic; tail sums are
// accumulated in long double starting from the smallest term.
#pragma once

#include <cstdint>

namespace smt::binomial {

inline constexpr int kMaxTrials = 64;

struct BinomialSpec {
  int n = 1;         // number of trials, 1..kMaxTrials
  double p = 0.5;    // per-trial success probability
};

// C(n, k) exactly; C(64, 32) still fits in 64 bits.
// Throws std::invalid_argument unless 0 <= k <= n <= kMaxTrials.
std::uint64_t choose(int n, int k);

// All three throw std::invalid_argument for an invalid spec or k outside [0, n].
double pmf(const BinomialSpec& spec, int k);
double upper_tail(const BinomialSpec& spec, int k);  // Pr(X >= k)
double lower_tail(const BinomialSpec& spec, int k);  // Pr(X <= k)

}  // namespace smt::binomial
