// Coin-toss scenario where the true-null and false-null p-values are
// dependent and the sequential tester loses FWER control.
//
// Experiment 1 tosses a fair coin n1 times; experiment 2 tosses another fair
// coin n2 times. Subfamily 1 holds A: Pr(heads) <= 0.1 (false) and
// B: Pr(heads) >= 0.5 (true), both computed from experiment 1. Subfamily 2
// holds C: Pr(heads) != 0.5 (true), computed from experiment 2. Rejecting A
// leaves alpha - p_A for C, so the budget C sees depends on the same tosses
// that drive B.
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace smt::coin {

// Boundary null for A; its p-value is the upper tail under p = 0.1.
inline constexpr double kAHeadsBound = 0.1;

enum class CConvention {
  TwoSidedDoubled,  // min(1, 2 * min(lower, upper))
  LowerTailOnly,    // Pr(X <= k)
  MinTail,          // min(lower, upper)
};

inline constexpr CConvention kAllConventions[] = {
    CConvention::TwoSidedDoubled, CConvention::LowerTailOnly, CConvention::MinTail};

std::string_view to_string(CConvention c);
std::optional<CConvention> parse_convention(std::string_view text);

struct CoinScenario {
  int n1 = 17;
  int n2 = 13;
  double alpha = 0.05;  // [0, 1]; 0 is allowed and rejects nothing
  CConvention c_convention = CConvention::TwoSidedDoubled;
};

void validate(const CoinScenario& scenario);

struct RejectA {
  double p_a = 0.0;
  double adjusted_alpha = 0.0;  // budget carried to subfamily 2
};
struct RejectB {
  double p_b = 0.0;
};
struct NoRejection {};

using FirstStage = std::variant<RejectA, RejectB, NoRejection>;

double p_value_a(int k1, const CoinScenario& scenario);
double p_value_b(int k1, const CoinScenario& scenario);

// Runs subfamily {A, B} through the refined sequential tester.
FirstStage first_stage_decision(int k1, const CoinScenario& scenario);

double c_pvalue(int k2, const CoinScenario& scenario);

// True iff B, or C after A, is rejected for the outcome (k1, k2).
bool rejects_true_null(int k1, int k2, const CoinScenario& scenario);

// Enumerates all (k1, k2) outcomes.
double exact_fwer(const CoinScenario& scenario);

struct AnalyticBound {
  double b_region = 0.0;  // Pr(B rejected)
  double stage2 = 0.0;    // sum over A's region of Pr(k1) * adjusted alpha
  double total = 0.0;
};

// FWER if C were rejected with probability exactly equal to its adjusted alpha.
AnalyticBound analytic_fwer_maxpower(const CoinScenario& scenario);

struct McEstimate {
  double fwer = 0.0;
  double se = 0.0;
};

// Repetition i tosses both coins from StreamRng(seed, i).
McEstimate mc_fwer(const CoinScenario& scenario, std::uint64_t n_reps, std::uint64_t seed,
                   unsigned threads = 0);

struct PValueRowA {
  int heads = 0;
  double pmf_fair = 0.0;  // Pr(heads | fair coin)
  double p_a = 0.0;
  double adjusted_alpha = 0.0;
};

struct ConventionResult {
  CConvention convention = CConvention::TwoSidedDoubled;
  double fwer_exact = 0.0;
  std::optional<McEstimate> mc;
};

struct ScenarioReport {
  CoinScenario scenario;
  double p_b_region = 0.0;
  std::vector<PValueRowA> pvalue_table_a;  // A's rejection region, most heads first
  AnalyticBound analytic;
  std::vector<ConventionResult> conventions;
};

// mc_reps == 0 skips the Monte Carlo column.
ScenarioReport build_report(const CoinScenario& scenario,
                            const std::vector<CConvention>& conventions,
                            std::uint64_t mc_reps, std::uint64_t seed, unsigned threads = 0);

}  // namespace smt::coin
