// Sequential multiple testing over an ordered stream of subfamilies.
//
// Each subfamily is a vector of p-values. At most one hypothesis per
// subfamily is rejected: the one with the smallest p-value, provided
// m * p_min <= current budget. After a rejection the budget shrinks by
// (m - 1) * p_min under the refined rule, or by m * p_min under the
// Webb-Petitjean rule. The first non-rejection halts the tester.
//
// Indices are zero-based. Ties in the minimum resolve to the smallest index.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace smt {

enum class Variant { Refined, WebbPetitjean };

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view text);

struct RejectionRecord {
  std::size_t step = 0;            // 1-based position in the stream
  std::size_t index = 0;           // 0-based position inside the subfamily
  double p_min = 0.0;
  std::size_t subfamily_size = 0;

  friend bool operator==(const RejectionRecord&, const RejectionRecord&) = default;
};

struct Rejected {
  RejectionRecord record;
  double new_budget = 0.0;
};

enum class StopReason { BudgetExceeded, AlreadyHalted };

struct Stopped {
  StopReason reason = StopReason::BudgetExceeded;
};

using Decision = std::variant<Rejected, Stopped>;

inline bool is_rejected(const Decision& d) { return std::holds_alternative<Rejected>(d); }

struct MinPValue {
  std::size_t index = 0;
  double p = 0.0;
};

// Throws std::invalid_argument on an empty span or any value outside [0, 1]
// (NaN included).
MinPValue min_with_index(std::span<const double> pvalues);

// Budget spent by a rejection of p_min in a subfamily of size m.
double spend(Variant variant, std::size_t m, double p_min);

class SequentialTester {
 public:
  // alpha must lie in (0, 1]; throws std::invalid_argument otherwise.
  SequentialTester(double alpha, Variant variant);

  // Consumes the next subfamily. Invalid p-values throw std::invalid_argument
  // and leave the tester untouched. After a stop every call returns
  // Stopped{AlreadyHalted} without side effects.
  Decision step(std::span<const double> pvalues);

  double alpha0() const { return alpha0_; }
  double budget() const { return budget_; }
  std::size_t current_step() const { return step_; }
  Variant variant() const { return variant_; }
  bool halted() const { return halted_; }
  const std::vector<RejectionRecord>& rejections() const { return rejections_; }

 private:
  double alpha0_;
  double budget_;
  std::size_t step_ = 1;
  Variant variant_;
  std::vector<RejectionRecord> rejections_;
  bool halted_ = false;
};

SequentialTester new_tester(double alpha, Variant variant);

// Feeds subfamilies in order until the tester stops or the list runs out.
SequentialTester run_sequence(double alpha, Variant variant,
                              const std::vector<std::vector<double>>& subfamilies);

}  // namespace smt
