// Monte Carlo estimation of familywise error rate and power for the
// sequential tester on synthetic subfamilies with known true/false labels.
//
// Each hypothesis is true with probability p_true. True nulls draw
// p ~ U[0, 1); false nulls draw p ~ U[0, max_false_pval). Trials keep
// generating subfamilies until the tester stops.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "smt/rng.hpp"
#include "smt/sequential_tester.hpp"

namespace smt {

// Upper bound on subfamilies consumed by one trial.
inline constexpr std::uint64_t kMaxSubfamiliesPerTrial = 100'000;

struct SimConfig {
  double alpha = 0.05;
  std::size_t subfamily_size = 1;
  double p_true = 0.5;
  double max_false_pval = 0.1;
  std::uint64_t n_reps = 1'000'000;
  std::uint64_t seed = 1;
  Variant variant = Variant::Refined;
};

// Throws std::invalid_argument describing the first bad field.
void validate(const SimConfig& config);

struct Subfamily {
  std::vector<double> pvalues;
  std::vector<bool> is_true_null;
};

// Refills `out` in place so a trial can reuse its buffers.
void generate_subfamily(StreamRng& rng, std::size_t size, double p_true,
                        double max_false_pval, Subfamily& out);
Subfamily generate_subfamily(StreamRng& rng, std::size_t size, double p_true,
                             double max_false_pval);

struct TrialOutcome {
  bool false_rejection = false;     // some rejected hypothesis was a true null
  std::uint64_t true_discoveries = 0;
  std::uint64_t steps_taken = 0;    // number of rejections
  bool capped = false;              // hit kMaxSubfamiliesPerTrial
};

TrialOutcome run_trial(StreamRng& rng, const SimConfig& config);

struct TreatmentResult {
  SimConfig config;
  double fwer_hat = 0.0;
  double fwer_se = 0.0;
  double mean_true_discoveries = 0.0;
  std::uint64_t capped_trials = 0;
};

// Trial i uses StreamRng(config.seed, i). threads == 0 uses all cores; the
// result is bit-identical for every thread count.
TreatmentResult run_treatment(const SimConfig& config, unsigned threads = 0);

struct GridSpec {
  double alpha = 0.05;
  std::vector<std::size_t> sizes{1, 10, 100, 1000};
  std::vector<double> p_trues{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  double max_false_pval = 0.1;
  std::uint64_t n_reps = 1'000'000;
  std::uint64_t seed = 1;
  std::vector<Variant> variants{Variant::Refined};
};

// Rows ordered by variant, then size, then p_true. Every treatment shares the
// grid seed, so the two variants see identical p-value streams.
std::vector<TreatmentResult> run_grid(const GridSpec& grid, unsigned threads = 0);

}  // namespace smt
