#include "output.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <fmt/ostream.h>

namespace smt::cli {

std::optional<Format> parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  if (text == "text") return Format::Text;
  return std::nullopt;
}

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

nlohmann::json to_json(const TreatmentResult& row) {
  return {
      {"subfamily_size", row.config.subfamily_size},
      {"p_true", row.config.p_true},
      {"max_false_pval", row.config.max_false_pval},
      {"variant", std::string(to_string(row.config.variant))},
      {"n_reps", row.config.n_reps},
      {"alpha", row.config.alpha},
      {"seed", row.config.seed},
      {"fwer_hat", row.fwer_hat},
      {"fwer_se", row.fwer_se},
      {"mean_true_discoveries", row.mean_true_discoveries},
      {"capped_trials", row.capped_trials},
  };
}

void write_grid(std::ostream& out, std::span<const TreatmentResult> rows, Format format) {
  switch (format) {
    case Format::Csv:
      out << kGridCsvHeader << '\n';
      for (const auto& r : rows) {
        fmt::print(out, "{},{},{},{},{},{},{},{}\n", r.config.subfamily_size,
                   format_number(r.config.p_true), format_number(r.config.max_false_pval),
                   to_string(r.config.variant), r.config.n_reps, format_number(r.fwer_hat),
                   format_number(r.fwer_se), format_number(r.mean_true_discoveries));
      }
      break;
    case Format::Json: {
      auto array = nlohmann::json::array();
      for (const auto& r : rows) array.push_back(to_json(r));
      out << array.dump(2) << '\n';
      break;
    }
    case Format::Text:
      fmt::print(out, "{:>8} {:>6} {:>8} {:>8} {:>10} {:>10} {:>10} {:>10}\n", "size",
                 "p_true", "max_fp", "variant", "n_reps", "fwer", "fwer_se", "mean_td");
      for (const auto& r : rows) {
        fmt::print(out, "{:>8} {:>6.2f} {:>8.3f} {:>8} {:>10} {:>10.6f} {:>10.6f} {:>10.4f}\n",
                   r.config.subfamily_size, r.config.p_true, r.config.max_false_pval,
                   to_string(r.config.variant), r.config.n_reps, r.fwer_hat, r.fwer_se,
                   r.mean_true_discoveries);
      }
      break;
  }
}

nlohmann::json to_json(const coin::ScenarioReport& report) {
  nlohmann::json table = nlohmann::json::array();
  for (const auto& row : report.pvalue_table_a) {
    table.push_back({{"heads", row.heads},
                     {"pmf_fair", row.pmf_fair},
                     {"p_a", row.p_a},
                     {"adjusted_alpha", row.adjusted_alpha}});
  }
  nlohmann::json conventions = nlohmann::json::array();
  for (const auto& c : report.conventions) {
    nlohmann::json entry{{"convention", std::string(coin::to_string(c.convention))},
                         {"fwer_exact", c.fwer_exact}};
    if (c.mc) {
      entry["fwer_mc"] = c.mc->fwer;
      entry["fwer_mc_se"] = c.mc->se;
    }
    conventions.push_back(entry);
  }
  return {
      {"n1", report.scenario.n1},
      {"n2", report.scenario.n2},
      {"alpha", report.scenario.alpha},
      {"p_b_region", report.p_b_region},
      {"pvalue_table_a", table},
      {"analytic_stage2", report.analytic.stage2},
      {"fwer_analytic_maxpower", report.analytic.total},
      {"conventions", conventions},
  };
}

void write_report(std::ostream& out, const coin::ScenarioReport& report, Format format) {
  switch (format) {
    case Format::Json:
      out << to_json(report).dump(2) << '\n';
      break;
    case Format::Csv:
      out << "record,heads,convention,value,se\n";
      for (const auto& row : report.pvalue_table_a) {
        fmt::print(out, "pmf_fair,{},,{},\n", row.heads, format_number(row.pmf_fair));
        fmt::print(out, "p_value_a,{},,{},\n", row.heads, format_number(row.p_a));
        fmt::print(out, "adjusted_alpha,{},,{},\n", row.heads,
                   format_number(row.adjusted_alpha));
      }
      fmt::print(out, "b_region,,,{},\n", format_number(report.p_b_region));
      fmt::print(out, "analytic_stage2,,,{},\n", format_number(report.analytic.stage2));
      fmt::print(out, "analytic_total,,,{},\n", format_number(report.analytic.total));
      for (const auto& c : report.conventions) {
        fmt::print(out, "exact_fwer,,{},{},\n", coin::to_string(c.convention),
                   format_number(c.fwer_exact));
        if (c.mc) {
          fmt::print(out, "mc_fwer,,{},{},{}\n", coin::to_string(c.convention),
                     format_number(c.mc->fwer), format_number(c.mc->se));
        }
      }
      break;
    case Format::Text: {
      const auto& s = report.scenario;
      fmt::print(out, "Coin-toss dependence scenario: n1={} n2={} alpha={}\n\n", s.n1, s.n2,
                 s.alpha);
      fmt::print(out, "Pr(B rejected)                    {:.4f}  ({:.10f})\n\n",
                 report.p_b_region, report.p_b_region);
      fmt::print(out, "{:>5}  {:>12}  {:>12}  {:>14}\n", "heads", "Pr(heads)", "p_A",
                 "alpha for C");
      for (const auto& row : report.pvalue_table_a) {
        fmt::print(out, "{:>5}  {:>12.4e}  {:>12.4e}  {:>14.6f}\n", row.heads, row.pmf_fair,
                   row.p_a, row.adjusted_alpha);
      }
      fmt::print(out, "\nMax-power C, stage-2 FWER          {:.4f}  ({:.10f})\n",
                 report.analytic.stage2, report.analytic.stage2);
      fmt::print(out, "Max-power C, total FWER            {:.4f}  ({:.10f})\n\n",
                 report.analytic.total, report.analytic.total);
      fmt::print(out, "{:<12} {:>12} {:>12} {:>12}\n", "convention", "exact_fwer", "mc_fwer",
                 "mc_se");
      for (const auto& c : report.conventions) {
        if (c.mc) {
          fmt::print(out, "{:<12} {:>12.6f} {:>12.6f} {:>12.6f}\n",
                     coin::to_string(c.convention), c.fwer_exact, c.mc->fwer, c.mc->se);
        } else {
          fmt::print(out, "{:<12} {:>12.6f} {:>12} {:>12}\n", coin::to_string(c.convention),
                     c.fwer_exact, "-", "-");
        }
      }
      break;
    }
  }
}

nlohmann::json to_json(const RunManifest& manifest) {
  const auto stamp = [](std::chrono::system_clock::time_point t) {
    return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}",
                       fmt::gmtime(std::chrono::system_clock::to_time_t(t)));
  };
  return {
      {"command", manifest.command},
      {"config", manifest.config},
      {"seed", manifest.seed},
      {"tool_version", manifest.tool_version},
      {"started", stamp(manifest.started)},
      {"finished", stamp(manifest.finished)},
  };
}

}  // namespace smt::cli
