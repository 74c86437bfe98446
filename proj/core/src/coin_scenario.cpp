#include "smt/coin_scenario.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "smt/binomial.hpp"
#include "smt/parallel.hpp"
#include "smt/rng.hpp"
#include "smt/sequential_tester.hpp"

namespace smt::coin {
namespace {

void check_heads(int k, int n, const char* name) {
  if (k < 0 || k > n) {
    throw std::invalid_argument(std::string(name) + "=" + std::to_string(k) +
                                " outside [0, " + std::to_string(n) + "]");
  }
}

std::uint64_t low_bits(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Row-major [k1][k2] rejection table.
std::vector<char> rejection_table(const CoinScenario& scenario) {
  std::vector<char> table(static_cast<std::size_t>((scenario.n1 + 1) * (scenario.n2 + 1)));
  for (int k1 = 0; k1 <= scenario.n1; ++k1) {
    for (int k2 = 0; k2 <= scenario.n2; ++k2) {
      table[static_cast<std::size_t>(k1 * (scenario.n2 + 1) + k2)] =
          rejects_true_null(k1, k2, scenario) ? 1 : 0;
    }
  }
  return table;
}

}  // namespace

std::string_view to_string(CConvention c) {
  switch (c) {
    case CConvention::TwoSidedDoubled:
      return "doubled";
    case CConvention::LowerTailOnly:
      return "lowertail";
    case CConvention::MinTail:
      return "mintail";
  }
  return "unknown";
}

std::optional<CConvention> parse_convention(std::string_view text) {
  for (const CConvention c : kAllConventions) {
    if (text == to_string(c)) return c;
  }
  return std::nullopt;
}

void validate(const CoinScenario& scenario) {
  if (scenario.n1 < 1 || scenario.n1 > binomial::kMaxTrials || scenario.n2 < 1 ||
      scenario.n2 > binomial::kMaxTrials) {
    throw std::invalid_argument("toss counts must lie in [1, " +
                                std::to_string(binomial::kMaxTrials) + "]");
  }
  if (!(scenario.alpha >= 0.0 && scenario.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
}

double p_value_a(int k1, const CoinScenario& scenario) {
  check_heads(k1, scenario.n1, "k1");
  return binomial::upper_tail({scenario.n1, kAHeadsBound}, k1);
}

double p_value_b(int k1, const CoinScenario& scenario) {
  check_heads(k1, scenario.n1, "k1");
  return binomial::lower_tail({scenario.n1, 0.5}, k1);
}

FirstStage first_stage_decision(int k1, const CoinScenario& scenario) {
  validate(scenario);
  const double pvalues[] = {p_value_a(k1, scenario), p_value_b(k1, scenario)};
  if (scenario.alpha == 0.0) return NoRejection{};

  SequentialTester tester(scenario.alpha, Variant::Refined);
  const Decision decision = tester.step(pvalues);
  const auto* rejected = std::get_if<Rejected>(&decision);
  if (rejected == nullptr) return NoRejection{};
  if (rejected->record.index == 0) return RejectA{pvalues[0], rejected->new_budget};
  return RejectB{pvalues[1]};
}

double c_pvalue(int k2, const CoinScenario& scenario) {
  check_heads(k2, scenario.n2, "k2");
  const binomial::BinomialSpec fair{scenario.n2, 0.5};
  const double lower = binomial::lower_tail(fair, k2);
  switch (scenario.c_convention) {
    case CConvention::LowerTailOnly:
      return lower;
    case CConvention::MinTail:
      return std::min(lower, binomial::upper_tail(fair, k2));
    case CConvention::TwoSidedDoubled:
      return std::min(1.0, 2.0 * std::min(lower, binomial::upper_tail(fair, k2)));
  }
  throw std::logic_error("unhandled C convention");
}

bool rejects_true_null(int k1, int k2, const CoinScenario& scenario) {
  const FirstStage first = first_stage_decision(k1, scenario);
  if (std::holds_alternative<RejectB>(first)) return true;
  const auto* a = std::get_if<RejectA>(&first);
  if (a == nullptr) return false;
  // Subfamily 2 has one member, so rejection means p_C <= remaining budget.
  return c_pvalue(k2, scenario) <= a->adjusted_alpha;
}

double exact_fwer(const CoinScenario& scenario) {
  validate(scenario);
  long double total = 0.0L;
  for (int k1 = 0; k1 <= scenario.n1; ++k1) {
    const long double w1 = binomial::pmf({scenario.n1, 0.5}, k1);
    for (int k2 = 0; k2 <= scenario.n2; ++k2) {
      if (rejects_true_null(k1, k2, scenario)) {
        total += w1 * binomial::pmf({scenario.n2, 0.5}, k2);
      }
    }
  }
  return static_cast<double>(total);
}

AnalyticBound analytic_fwer_maxpower(const CoinScenario& scenario) {
  validate(scenario);
  long double b_region = 0.0L;
  long double stage2 = 0.0L;
  for (int k1 = 0; k1 <= scenario.n1; ++k1) {
    const long double w = binomial::pmf({scenario.n1, 0.5}, k1);
    const FirstStage first = first_stage_decision(k1, scenario);
    if (std::holds_alternative<RejectB>(first)) {
      b_region += w;
    } else if (const auto* a = std::get_if<RejectA>(&first)) {
      stage2 += w * a->adjusted_alpha;
    }
  }
  return {static_cast<double>(b_region), static_cast<double>(stage2),
          static_cast<double>(b_region + stage2)};
}

McEstimate mc_fwer(const CoinScenario& scenario, std::uint64_t n_reps, std::uint64_t seed,
                   unsigned threads) {
  validate(scenario);
  if (n_reps < 1) throw std::invalid_argument("n_reps must be at least 1");

  const std::vector<char> table = rejection_table(scenario);
  const std::uint64_t mask1 = low_bits(scenario.n1);
  const std::uint64_t mask2 = low_bits(scenario.n2);
  const auto stride = static_cast<std::size_t>(scenario.n2 + 1);

  // Each random bit is one fair toss.
  const auto hits = parallel_reduce<std::uint64_t>(
      n_reps, threads, [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t local = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
          StreamRng rng(seed, i);
          const auto k1 = static_cast<std::size_t>(std::popcount(rng() & mask1));
          const auto k2 = static_cast<std::size_t>(std::popcount(rng() & mask2));
          local += static_cast<std::uint64_t>(table[k1 * stride + k2]);
        }
        return local;
      });

  const auto n = static_cast<double>(n_reps);
  const double f = static_cast<double>(hits) / n;
  return {f, std::sqrt(f * (1.0 - f) / n)};
}

ScenarioReport build_report(const CoinScenario& scenario,
                            const std::vector<CConvention>& conventions,
                            std::uint64_t mc_reps, std::uint64_t seed, unsigned threads) {
  validate(scenario);
  ScenarioReport report;
  report.scenario = scenario;
  report.analytic = analytic_fwer_maxpower(scenario);
  report.p_b_region = report.analytic.b_region;

  for (int k1 = scenario.n1; k1 >= 0; --k1) {
    const FirstStage first = first_stage_decision(k1, scenario);
    if (const auto* a = std::get_if<RejectA>(&first)) {
      report.pvalue_table_a.push_back(
          {k1, binomial::pmf({scenario.n1, 0.5}, k1), a->p_a, a->adjusted_alpha});
    }
  }

  for (const CConvention c : conventions) {
    CoinScenario variant = scenario;
    variant.c_convention = c;
    ConventionResult row{c, exact_fwer(variant), std::nullopt};
    if (mc_reps > 0) row.mc = mc_fwer(variant, mc_reps, seed, threads);
    report.conventions.push_back(row);
  }
  return report;
}

}  // namespace smt::coin
