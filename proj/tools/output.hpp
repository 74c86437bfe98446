// Serialization of simulation and scenario results for the smt CLI.
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "smt/coin_scenario.hpp"
#include "smt/simulation.hpp"

namespace smt::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Format { Csv, Json, Text };

std::optional<Format> parse_format(std::string_view text);

// 17 significant digits; round-trips any double.
std::string format_number(double x);

inline constexpr std::string_view kGridCsvHeader =
    "subfamily_size,p_true,max_false_pval,variant,n_reps,fwer_hat,fwer_se,"
    "mean_true_discoveries";

void write_grid(std::ostream& out, std::span<const TreatmentResult> rows, Format format);

void write_report(std::ostream& out, const coin::ScenarioReport& report, Format format);

nlohmann::json to_json(const TreatmentResult& row);
nlohmann::json to_json(const coin::ScenarioReport& report);

struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::string tool_version{kToolVersion};
  std::chrono::system_clock::time_point started;
  std::chrono::system_clock::time_point finished;
};

nlohmann::json to_json(const RunManifest& manifest);

}  // namespace smt::cli
