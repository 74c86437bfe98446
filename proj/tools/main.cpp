// smt: sequential multiple testing CLI.
//
//   smt grid            Monte Carlo FWER / power grid as CSV
//   smt counterexample  coin-toss dependence scenario report
//   smt step            stream subfamilies from stdin through the tester
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "output.hpp"

namespace {

using smt::cli::ExitCode;

const std::map<std::string, smt::cli::Format> kFormats{
    {"csv", smt::cli::Format::Csv},
    {"json", smt::cli::Format::Json},
    {"text", smt::cli::Format::Text}};

const std::map<std::string, smt::coin::CConvention> kConventionNames{
    {"doubled", smt::coin::CConvention::TwoSidedDoubled},
    {"lowertail", smt::coin::CConvention::LowerTailOnly},
    {"mintail", smt::coin::CConvention::MinTail}};

const CLI::Validator kOpenUnitAlpha(
    [](std::string& input) -> std::string {
      double value = 0.0;
      if (!CLI::detail::lexical_cast(input, value) || !(value > 0.0 && value <= 1.0)) {
        return "alpha must lie in (0, 1], got " + input;
      }
      return {};
    },
    "(0,1]");

const CLI::Validator kClosedUnit(
    [](std::string& input) -> std::string {
      double value = 0.0;
      if (!CLI::detail::lexical_cast(input, value) || !(value >= 0.0 && value <= 1.0)) {
        return "value must lie in [0, 1], got " + input;
      }
      return {};
    },
    "[0,1]");

struct OutputTarget {
  std::string path;  // empty means stdout
  bool manifest = true;

  // Writes the manifest next to the output file, or to stderr for stdout.
  void emit_manifest(const smt::cli::RunManifest& run) const {
    if (!manifest) return;
    const std::string text = smt::cli::to_json(run).dump(2);
    if (path.empty()) {
      std::cerr << text << '\n';
      return;
    }
    std::ofstream side(path + ".manifest.json");
    side << text << '\n';
  }
};

template <typename Run>
int with_output(const OutputTarget& target, smt::cli::RunManifest manifest, Run run) {
  manifest.started = std::chrono::system_clock::now();
  int code = ExitCode::kOk;
  if (target.path.empty()) {
    code = run(std::cout);
  } else {
    std::ofstream file(target.path, std::ios::binary | std::ios::trunc);
    if (!file) {
      std::cerr << "error: cannot open '" << target.path << "' for writing\n";
      return ExitCode::kIoError;
    }
    code = run(file);
  }
  if (code != ExitCode::kOk) {
    std::cerr << "error: failed writing output\n";
    return code;
  }
  manifest.finished = std::chrono::system_clock::now();
  target.emit_manifest(manifest);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential multiple testing with per-subfamily FWER budget spending"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(smt::cli::kToolVersion));

  // grid
  smt::cli::GridOptions grid;
  std::string grid_variant = "refined";
  OutputTarget grid_out;
  auto* grid_cmd = app.add_subcommand("grid", "Run the Monte Carlo treatment grid");
  grid_cmd->add_option("--alpha", grid.grid.alpha, "Global significance level")
      ->check(kOpenUnitAlpha)
      ->capture_default_str();
  grid_cmd->add_option("--variant", grid_variant, "Budget rule: refined, wp or both")
      ->check(CLI::IsMember({"refined", "wp", "both"}))
      ->capture_default_str();
  grid_cmd->add_option("--sizes", grid.grid.sizes, "Comma-separated subfamily sizes")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  grid_cmd->add_option("--ptrue", grid.grid.p_trues, "Comma-separated true-null probabilities")
      ->delimiter(',')
      ->check(kClosedUnit);
  grid_cmd->add_option("--max-false-pval", grid.grid.max_false_pval,
                       "Upper bound of false-null p-values")
      ->check(kOpenUnitAlpha)
      ->capture_default_str();
  grid_cmd->add_option("--reps", grid.grid.n_reps, "Trials per treatment")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  grid_cmd->add_option("--seed", grid.grid.seed, "Base RNG seed")->capture_default_str();
  grid_cmd->add_option("--threads", grid.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  grid_cmd->add_option("--out", grid_out.path, "Output path (default stdout)");
  grid_cmd->add_option("--format", grid.format, "csv, json or text")
      ->transform(CLI::CheckedTransformer(kFormats));
  grid_cmd->add_flag("--no-manifest{false}", grid_out.manifest, "Do not emit the run manifest");

  // counterexample
  smt::cli::CounterexampleOptions cx;
  std::string cx_convention = "all";
  OutputTarget cx_out;
  auto* cx_cmd =
      app.add_subcommand("counterexample", "Coin-toss scenario where dependence breaks FWER");
  cx_cmd->add_option("--alpha", cx.scenario.alpha, "Global significance level")
      ->check(kClosedUnit)
      ->capture_default_str();
  cx_cmd->add_option("--n1", cx.scenario.n1, "Tosses in the experiment behind A and B")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  cx_cmd->add_option("--n2", cx.scenario.n2, "Tosses in the experiment behind C")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  cx_cmd->add_option("--c-convention", cx_convention,
                     "p-value for C: doubled, mintail, lowertail or all")
      ->check(CLI::IsMember({"doubled", "mintail", "lowertail", "all"}))
      ->capture_default_str();
  cx_cmd->add_option("--mc-reps", cx.mc_reps, "Monte Carlo repetitions (0 = skip)")
      ->capture_default_str();
  cx_cmd->add_option("--seed", cx.seed, "RNG seed")->capture_default_str();
  cx_cmd->add_option("--threads", cx.threads, "Worker threads (0 = all cores)");
  cx_cmd->add_option("--out", cx_out.path, "Output path (default stdout)");
  cx_cmd->add_option("--format", cx.format, "csv, json or text")
      ->transform(CLI::CheckedTransformer(kFormats));
  cx_cmd->add_flag("--no-manifest{false}", cx_out.manifest, "Do not emit the run manifest");

  // step
  double step_alpha = 0.05;
  std::string step_variant = "refined";
  auto* step_cmd = app.add_subcommand(
      "step", "Read one subfamily of p-values per stdin line and print each decision");
  step_cmd->add_option("--alpha", step_alpha, "Global significance level")
      ->check(kOpenUnitAlpha)
      ->capture_default_str();
  step_cmd->add_option("--variant", step_variant, "Budget rule: refined or wp")
      ->check(CLI::IsMember({"refined", "wp"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ExitCode::kUsageError;
  }

  try {
    if (*grid_cmd) {
      if (grid_variant == "both") {
        grid.grid.variants = {smt::Variant::Refined, smt::Variant::WebbPetitjean};
      } else {
        grid.grid.variants = {*smt::parse_variant(grid_variant)};
      }
      smt::cli::RunManifest manifest{"grid", smt::cli::describe(grid), grid.grid.seed};
      return with_output(grid_out, manifest, [&](std::ostream& out) {
        return smt::cli::run_grid_command(grid, out);
      });
    }
    if (*cx_cmd) {
      if (cx_convention != "all") cx.conventions = {kConventionNames.at(cx_convention)};
      smt::cli::RunManifest manifest{"counterexample", smt::cli::describe(cx), cx.seed};
      return with_output(cx_out, manifest, [&](std::ostream& out) {
        return smt::cli::run_counterexample_command(cx, out);
      });
    }
    if (*step_cmd) {
      return smt::cli::run_step_command(step_alpha, *smt::parse_variant(step_variant),
                                        std::cin, std::cout, std::cerr);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ExitCode::kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ExitCode::kIoError;
  }
  return ExitCode::kUsageError;
}
