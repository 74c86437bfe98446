// Subcommand bodies for the smt CLI, separated from argument parsing so the
// tests can drive them with string streams.
#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "output.hpp"
#include "smt/coin_scenario.hpp"
#include "smt/sequential_tester.hpp"
#include "smt/simulation.hpp"

namespace smt::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kUsageError = 2 };

struct GridOptions {
  GridSpec grid;
  Format format = Format::Csv;
  unsigned threads = 0;
};

struct CounterexampleOptions {
  coin::CoinScenario scenario;
  std::vector<coin::CConvention> conventions{std::begin(coin::kAllConventions),
                                             std::end(coin::kAllConventions)};
  std::uint64_t mc_reps = 0;
  std::uint64_t seed = 1;
  Format format = Format::Text;
  unsigned threads = 0;
};

nlohmann::json describe(const GridOptions& options);
nlohmann::json describe(const CounterexampleOptions& options);

int run_grid_command(const GridOptions& options, std::ostream& out);
int run_counterexample_command(const CounterexampleOptions& options, std::ostream& out);

// Reads one subfamily per line (whitespace-separated p-values) and prints
// "REJECT index=<j> p=<p> budget=<b>" or "STOP". Returns kOk on STOP or end
// of input, kUsageError on a malformed line.
int run_step_command(double alpha, Variant variant, std::istream& in, std::ostream& out,
                     std::ostream& err);

// Parses one input line into p-values; returns an error message on failure.
std::optional<std::string> parse_pvalue_line(const std::string& line,
                                             std::vector<double>& pvalues);

}  // namespace smt::cli
