#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "scaleplan/coefficients.hpp"
#include "scaleplan/cost_model.hpp"
#include "scaleplan/fitting.hpp"
#include "scaleplan/sweep.hpp"

namespace scaleplan {

// Coefficients serialize as a JSON object with keys "A","B","E","alpha","beta".
// All values must be finite numbers.
std::string coefficients_to_json_text(const Coefficients& c);
Coefficients coefficients_from_json_text(const std::string& text);
Coefficients load_coefficients_json(const std::filesystem::path& path);
void save_coefficients_json(const Coefficients& c, const std::filesystem::path& path);

/// Planner configuration document with top-level sections "hardware", "mfu"
/// and "demand"; each section is optional and falls back to the defaults.
struct PlannerConfig {
  HardwareProfile hardware = HardwareProfile::a100_default();
  MfuProfile mfu = MfuProfile::default_profile();
  InferenceDemand demand = InferenceDemand::of_requests(0);
};

PlannerConfig planner_config_from_json_text(const std::string& text);
PlannerConfig load_planner_config(const std::filesystem::path& path);

/// Run-log CSV: header "params,tokens,loss", one run per row, scientific
/// notation permitted. Rows that fail TrainingRun invariants raise ParseError
/// with line numbers.
std::vector<TrainingRun> parse_run_log_csv(const std::string& text);
std::vector<TrainingRun> load_run_log_csv(const std::filesystem::path& path);

/// Sweep CSV schema:
/// loss,demand,flops_ratio,params_ratio,tokens_ratio,optimal_params,
/// optimal_tokens,baseline_params,baseline_tokens
/// Invalid cells carry the literal token NA outside the key columns.
std::string sweep_to_csv(const SweepResult& result);

/// Writes via a temp file in the target directory and renames, so a partial
/// file is never observed at the destination path.
void write_sweep_csv(const SweepResult& result, const std::filesystem::path& path);

}  // namespace scaleplan
