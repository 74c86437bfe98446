#include "smt/binomial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace smt::binomial {
namespace {

void validate(const BinomialSpec& spec, int k) {
  if (spec.n < 1 || spec.n > kMaxTrials) {
    throw std::invalid_argument("binomial n must lie in [1, " + std::to_string(kMaxTrials) +
                                "], got " + std::to_string(spec.n));
  }
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
    throw std::invalid_argument("binomial p must lie in [0, 1]");
  }
  if (k < 0 || k > spec.n) {
    throw std::invalid_argument("k=" + std::to_string(k) + " outside [0, " +
                                std::to_string(spec.n) + "]");
  }
}

long double pmf_ld(const BinomialSpec& spec, int k) {
  const auto coeff = static_cast<long double>(choose(spec.n, k));
  const long double p = spec.p;
  const long double q = 1.0L - p;
  return coeff * std::pow(p, static_cast<long double>(k)) *
         std::pow(q, static_cast<long double>(spec.n - k));
}

// Sums pmf over [lo, hi], smallest terms first. The pmf is unimodal, so
// walking inward from both ends keeps the running order close to ascending.
long double tail_sum(const BinomialSpec& spec, int lo, int hi) {
  long double total = 0.0L;
  while (lo <= hi) {
    const long double a = pmf_ld(spec, lo);
    if (lo == hi) {
      total += a;
      break;
    }
    const long double b = pmf_ld(spec, hi);
    if (a <= b) {
      total += a;
      ++lo;
    } else {
      total += b;
      --hi;
    }
  }
  return total;
}

double clamp_probability(long double x) {
  if (x < 0.0L) return 0.0;
  if (x > 1.0L) return 1.0;
  return static_cast<double>(x);
}

}  // namespace

std::uint64_t choose(int n, int k) {
  if (n < 0 || n > kMaxTrials || k < 0 || k > n) {
    throw std::invalid_argument("choose(n, k) requires 0 <= k <= n <= " +
                                std::to_string(kMaxTrials));
  }
  if (k > n - k) k = n - k;
  __extension__ using u128 = unsigned __int128;
  u128 result = 1;
  // result * (n - k + i) is divisible by i at each step; values stay < 2^70.
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(result);
}

double pmf(const BinomialSpec& spec, int k) {
  validate(spec, k);
  return clamp_probability(pmf_ld(spec, k));
}

double upper_tail(const BinomialSpec& spec, int k) {
  validate(spec, k);
  if (k == 0) return 1.0;
  return clamp_probability(tail_sum(spec, k, spec.n));
}

double lower_tail(const BinomialSpec& spec, int k) {
  validate(spec, k);
  if (k == spec.n) return 1.0;
  return clamp_probability(tail_sum(spec, 0, k));
}

}  // namespace smt::binomial
