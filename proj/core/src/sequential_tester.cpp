#include "smt/sequential_tester.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace smt {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Refined:
      return "refined";
    case Variant::WebbPetitjean:
      return "wp";
  }
  return "unknown";
}

std::optional<Variant> parse_variant(std::string_view text) {
  if (text == "refined") return Variant::Refined;
  if (text == "wp" || text == "webb-petitjean") return Variant::WebbPetitjean;
  return std::nullopt;
}

MinPValue min_with_index(std::span<const double> pvalues) {
  if (pvalues.empty()) {
    throw std::invalid_argument("subfamily must contain at least one p-value");
  }
  MinPValue best{0, pvalues[0]};
  for (std::size_t j = 0; j < pvalues.size(); ++j) {
    const double p = pvalues[j];
    // Negated form also rejects NaN.
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("p-value at index " + std::to_string(j) +
                                  " is outside [0, 1]");
    }
    if (p < best.p) best = {j, p};
  }
  return best;
}

double spend(Variant variant, std::size_t m, double p_min) {
  const auto weight = variant == Variant::Refined ? m - 1 : m;
  return static_cast<double>(weight) * p_min;
}

SequentialTester::SequentialTester(double alpha, Variant variant)
    : alpha0_(alpha), budget_(alpha), variant_(variant) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
}

Decision SequentialTester::step(std::span<const double> pvalues) {
  if (halted_) return Stopped{StopReason::AlreadyHalted};

  const MinPValue best = min_with_index(pvalues);
  const std::size_t m = pvalues.size();

  if (static_cast<double>(m) * best.p <= budget_) {
    RejectionRecord record{step_, best.index, best.p, m};
    rejections_.push_back(record);
    budget_ -= spend(variant_, m, best.p);
    ++step_;
    return Rejected{record, budget_};
  }
  halted_ = true;
  return Stopped{StopReason::BudgetExceeded};
}

SequentialTester new_tester(double alpha, Variant variant) {
  return SequentialTester(alpha, variant);
}

SequentialTester run_sequence(double alpha, Variant variant,
                              const std::vector<std::vector<double>>& subfamilies) {
  SequentialTester tester(alpha, variant);
  for (const auto& family : subfamilies) {
    if (!is_rejected(tester.step(family))) break;
  }
  return tester;
}

}  // namespace smt
