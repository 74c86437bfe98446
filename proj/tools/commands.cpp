#include "commands.hpp"

#include <charconv>
#include <cctype>
#include <string_view>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace smt::cli {

nlohmann::json describe(const GridOptions& options) {
  const GridSpec& g = options.grid;
  auto variants = nlohmann::json::array();
  for (const Variant v : g.variants) variants.push_back(std::string(to_string(v)));
  return {{"alpha", g.alpha},   {"sizes", g.sizes},           {"p_trues", g.p_trues},
          {"max_false_pval", g.max_false_pval},                {"n_reps", g.n_reps},
          {"seed", g.seed},     {"variants", variants},       {"threads", options.threads}};
}

nlohmann::json describe(const CounterexampleOptions& options) {
  auto conventions = nlohmann::json::array();
  for (const auto c : options.conventions) conventions.push_back(std::string(coin::to_string(c)));
  return {{"n1", options.scenario.n1},     {"n2", options.scenario.n2},
          {"alpha", options.scenario.alpha}, {"conventions", conventions},
          {"mc_reps", options.mc_reps},    {"seed", options.seed},
          {"threads", options.threads}};
}

int run_grid_command(const GridOptions& options, std::ostream& out) {
  const auto rows = run_grid(options.grid, options.threads);
  write_grid(out, rows, options.format);
  out.flush();
  return out ? kOk : kIoError;
}

int run_counterexample_command(const CounterexampleOptions& options, std::ostream& out) {
  const auto report = coin::build_report(options.scenario, options.conventions, options.mc_reps,
                                         options.seed, options.threads);
  write_report(out, report, options.format);
  out.flush();
  return out ? kOk : kIoError;
}

std::optional<std::string> parse_pvalue_line(const std::string& line,
                                             std::vector<double>& pvalues) {
  pvalues.clear();
  const char* cursor = line.data();
  const char* const end = line.data() + line.size();
  while (true) {
    while (cursor != end && std::isspace(static_cast<unsigned char>(*cursor))) ++cursor;
    if (cursor == end) break;
    double value = 0.0;
    const auto [next, ec] = std::from_chars(cursor, end, value);
    if (ec != std::errc{} ||
        (next != end && !std::isspace(static_cast<unsigned char>(*next)))) {
      const char* token_end = cursor;
      while (token_end != end && !std::isspace(static_cast<unsigned char>(*token_end))) {
        ++token_end;
      }
      return fmt::format("cannot parse '{}' as a p-value", std::string_view(cursor, token_end));
    }
    if (!(value >= 0.0 && value <= 1.0)) {
      return fmt::format("p-value {} is outside [0, 1]", std::string_view(cursor, next));
    }
    pvalues.push_back(value);
    cursor = next;
  }
  if (pvalues.empty()) return std::string("empty subfamily");
  return std::nullopt;
}

int run_step_command(double alpha, Variant variant, std::istream& in, std::ostream& out,
                     std::ostream& err) {
  SequentialTester tester(alpha, variant);
  std::string line;
  std::vector<double> pvalues;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (auto error = parse_pvalue_line(line, pvalues)) {
      fmt::print(err, "error: line {}: {}\n", line_no, *error);
      return kUsageError;
    }
    const Decision decision = tester.step(pvalues);
    if (const auto* r = std::get_if<Rejected>(&decision)) {
      fmt::print(out, "REJECT index={} p={} budget={}\n", r->record.index, r->record.p_min,
                 r->new_budget);
      out.flush();
    } else {
      out << "STOP\n";
      out.flush();
      return out ? kOk : kIoError;
    }
  }
  return out ? kOk : kIoError;
}

}  // namespace smt::cli
