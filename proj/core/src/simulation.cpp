#include "smt/simulation.hpp"

#include <cmath>
#include <stdexcept>

#include "smt/parallel.hpp"

namespace smt {

void validate(const SimConfig& config) {
  if (!(config.alpha > 0.0 && config.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
  if (config.subfamily_size < 1) {
    throw std::invalid_argument("subfamily_size must be at least 1");
  }
  if (!(config.p_true >= 0.0 && config.p_true <= 1.0)) {
    throw std::invalid_argument("p_true must lie in [0, 1]");
  }
  if (!(config.max_false_pval > 0.0 && config.max_false_pval <= 1.0)) {
    throw std::invalid_argument("max_false_pval must lie in (0, 1]");
  }
  if (config.n_reps < 1) {
    throw std::invalid_argument("n_reps must be at least 1");
  }
}

void generate_subfamily(StreamRng& rng, std::size_t size, double p_true,
                        double max_false_pval, Subfamily& out) {
  out.pvalues.resize(size);
  out.is_true_null.resize(size);
  for (std::size_t j = 0; j < size; ++j) {
    const bool is_true = rng.uniform01() < p_true;
    out.is_true_null[j] = is_true;
    out.pvalues[j] = is_true ? rng.uniform01() : rng.uniform(max_false_pval);
  }
}

Subfamily generate_subfamily(StreamRng& rng, std::size_t size, double p_true,
                             double max_false_pval) {
  Subfamily out;
  generate_subfamily(rng, size, p_true, max_false_pval, out);
  return out;
}

TrialOutcome run_trial(StreamRng& rng, const SimConfig& config) {
  SequentialTester tester(config.alpha, config.variant);
  Subfamily family;
  TrialOutcome outcome;
  for (std::uint64_t i = 0; i < kMaxSubfamiliesPerTrial; ++i) {
    generate_subfamily(rng, config.subfamily_size, config.p_true, config.max_false_pval,
                       family);
    const Decision decision = tester.step(family.pvalues);
    const auto* rejected = std::get_if<Rejected>(&decision);
    if (rejected == nullptr) return outcome;
    ++outcome.steps_taken;
    if (family.is_true_null[rejected->record.index]) {
      outcome.false_rejection = true;
    } else {
      ++outcome.true_discoveries;
    }
  }
  outcome.capped = true;
  return outcome;
}

namespace {

struct TreatmentTally {
  std::uint64_t false_rejections = 0;
  std::uint64_t true_discoveries = 0;
  std::uint64_t capped = 0;

  TreatmentTally& operator+=(const TreatmentTally& other) {
    false_rejections += other.false_rejections;
    true_discoveries += other.true_discoveries;
    capped += other.capped;
    return *this;
  }
};

}  // namespace

TreatmentResult run_treatment(const SimConfig& config, unsigned threads) {
  validate(config);
  const auto tally = parallel_reduce<TreatmentTally>(
      config.n_reps, threads, [&config](std::uint64_t begin, std::uint64_t end) {
        TreatmentTally local;
        for (std::uint64_t i = begin; i < end; ++i) {
          StreamRng rng(config.seed, i);
          const TrialOutcome outcome = run_trial(rng, config);
          local.false_rejections += outcome.false_rejection ? 1 : 0;
          local.true_discoveries += outcome.true_discoveries;
          local.capped += outcome.capped ? 1 : 0;
        }
        return local;
      });

  const auto n = static_cast<double>(config.n_reps);
  TreatmentResult result;
  result.config = config;
  result.fwer_hat = static_cast<double>(tally.false_rejections) / n;
  result.fwer_se = std::sqrt(result.fwer_hat * (1.0 - result.fwer_hat) / n);
  result.mean_true_discoveries = static_cast<double>(tally.true_discoveries) / n;
  result.capped_trials = tally.capped;
  return result;
}

std::vector<TreatmentResult> run_grid(const GridSpec& grid, unsigned threads) {
  if (grid.sizes.empty() || grid.p_trues.empty() || grid.variants.empty()) {
    throw std::invalid_argument("grid needs at least one size, p_true and variant");
  }
  std::vector<TreatmentResult> results;
  results.reserve(grid.variants.size() * grid.sizes.size() * grid.p_trues.size());
  for (const Variant variant : grid.variants) {
    for (const std::size_t size : grid.sizes) {
      for (const double p_true : grid.p_trues) {
        SimConfig config{grid.alpha, size, p_true, grid.max_false_pval,
                         grid.n_reps, grid.seed, variant};
        results.push_back(run_treatment(config, threads));
      }
    }
  }
  return results;
}

}  // namespace smt
