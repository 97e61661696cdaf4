// Command-line planner for inference-aware scaling-law decisions: evaluate
// losses, solve compute- and dollar-optimal training plans, sweep ratio grids
// to CSV, fit loss-law coefficients from run logs, and regenerate the bundled
// reference tables.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scaleplan/cost_model.hpp"
#include "scaleplan/errors.hpp"
#include "scaleplan/fitting.hpp"
#include "scaleplan/io.hpp"
#include "scaleplan/optimizer.hpp"
#include "scaleplan/si.hpp"
#include "scaleplan/sweep.hpp"
#include "scaleplan/tables.hpp"

namespace {

using nlohmann::json;
using namespace scaleplan;

// Flag-level problems exit with code 2; domain errors with 3; I/O with 4.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double flag_quantity(const std::string& flag, const std::string& text) {
  try {
    return si::parse_quantity(text);
  } catch (const Error& e) {
    throw FlagError(flag + ": " + e.what());
  }
}

double flag_positive(const std::string& flag, const std::string& text) {
  const double v = flag_quantity(flag, text);
  if (!(v > 0)) throw FlagError(flag + " must be > 0 (got '" + text + "')");
  return v;
}

double flag_nonneg(const std::string& flag, const std::string& text) {
  const double v = flag_quantity(flag, text);
  if (v < 0) throw FlagError(flag + " must be >= 0 (got '" + text + "')");
  return v;
}

int flag_count(const std::string& flag, const std::string& text) {
  const double v = flag_positive(flag, text);
  if (v != static_cast<double>(static_cast<long long>(v)) || v > 1e6)
    throw FlagError(flag + " must be a whole number of steps up to 1e6");
  return static_cast<int>(v);
}

Coefficients resolve_coefficients(const std::string& spec) {
  for (const auto name : Coefficients::preset_names())
    if (spec == name) return Coefficients::preset(spec);
  if (!std::filesystem::exists(spec))
    throw IoError("--coeffs: '" + spec + "' is neither a preset nor a readable file");
  return load_coefficients_json(spec);
}

double resolve_target_loss(const std::string& loss_text, const std::string& match_text,
                           const Coefficients& c) {
  const bool has_loss = !loss_text.empty();
  const bool has_match = !match_text.empty();
  if (has_loss == has_match)
    throw FlagError("give exactly one of --loss / --match-chinchilla");
  if (has_loss) return flag_positive("--loss", loss_text);
  return loss_for_chinchilla_params(flag_positive("--match-chinchilla", match_text), c);
}

json coefficients_json(const Coefficients& c) {
  return json{{"A", c.A}, {"B", c.B}, {"E", c.E}, {"alpha", c.alpha}, {"beta", c.beta}};
}

json config_json(const ModelConfig& cfg) {
  return json{{"params", cfg.params},
              {"tokens", cfg.train_tokens},
              {"tokens_per_param", cfg.tokens_per_param()}};
}

void emit(const json& payload) { std::cout << payload.dump(2) << "\n"; }

void print_kv(const char* key, const std::string& value) {
  std::printf("%-24s%s\n", key, value.c_str());
}

std::string config_text(const ModelConfig& cfg) {
  return si::format_count(cfg.params) + " params, " + si::format_count(cfg.train_tokens) +
         " tokens (" + si::format_sig3(cfg.tokens_per_param()) + " tokens/param)";
}

// ---------------------------------------------------------------------------
// Option storage

struct CommonOpts {
  std::string coeffs = "chinchilla";
  bool json_output = false;
};

struct QualityOpts {
  std::string loss_text;
  std::string match_text;
};

struct LossOpts : CommonOpts {
  std::string params_text;
  std::string tokens_text;
};

struct OptimizeComputeOpts : CommonOpts, QualityOpts {
  std::string inference_tokens_text = "0";
};

struct OptimizeCostOpts : CommonOpts, QualityOpts {
  std::string requests_text;
  std::string input_tokens_text;
  std::string output_tokens_text;
  std::string total_input_text;
  std::string total_output_text;
  std::string config_path;
};

struct SweepOpts : CommonOpts {
  std::string sizes_text, size_min, size_max, size_steps;
  std::string losses_text, loss_min, loss_max, loss_steps;
  std::string demands_text, demand_min, demand_max, demand_steps;
  std::string out_path;
  std::string config_path;  // cost mode only
  bool serial = false;
};

struct FitOpts : CommonOpts {
  std::string runs_path;
  std::string max_ratio_text;
  std::string delta_text = "1e-3";
  std::string max_iterations_text = "500";
  std::string gradient_tolerance_text = "1e-9";
  std::string out_coeffs_path;
  bool serial = false;
};

// ---------------------------------------------------------------------------
// Handlers

void run_loss(const LossOpts& opt) {
  const Coefficients c = resolve_coefficients(opt.coeffs);
  const ModelConfig cfg(flag_positive("--params", opt.params_text),
                        flag_positive("--tokens", opt.tokens_text));
  const double l = loss(cfg, c);
  if (opt.json_output) {
    emit(json{{"command", "loss"},
              {"params", cfg.params},
              {"tokens", cfg.train_tokens},
              {"tokens_per_param", cfg.tokens_per_param()},
              {"loss", l},
              {"coefficients", coefficients_json(c)}});
    return;
  }
  print_kv("loss", si::format_sig3(l) + " nats");
  print_kv("tokens/param", si::format_sig3(cfg.tokens_per_param()));
}

void run_baseline(const CommonOpts& common, const QualityOpts& quality) {
  const Coefficients c = resolve_coefficients(common.coeffs);
  const double l = resolve_target_loss(quality.loss_text, quality.match_text, c);
  const ModelConfig base = chinchilla_baseline(l, c);
  const FlopAccount flops = flop_account(base, 0);
  if (common.json_output) {
    emit(json{{"command", "baseline"},
              {"target_loss", l},
              {"baseline", config_json(base)},
              {"train_flops", flops.train_flops},
              {"coefficients", coefficients_json(c)}});
    return;
  }
  print_kv("target loss", si::format_sig3(l) + " nats");
  print_kv("chinchilla baseline", config_text(base));
  print_kv("train FLOPs", si::format_sci3(flops.train_flops));
}

void run_optimize_compute(const OptimizeComputeOpts& opt) {
  const Coefficients c = resolve_coefficients(opt.coeffs);
  const double l = resolve_target_loss(opt.loss_text, opt.match_text, c);
  const double d_inf = flag_nonneg("--inference-tokens", opt.inference_tokens_text);
  const OptimalPlan plan = solve_optimal(l, TradeoffObjective::compute(d_inf), c);
  const FlopAccount opt_flops = flop_account(plan.optimal, d_inf);
  const FlopAccount base_flops = flop_account(plan.baseline, d_inf);
  if (opt.json_output) {
    emit(json{{"command", "optimize-compute"},
              {"target_loss", l},
              {"inference_tokens", d_inf},
              {"optimal", config_json(plan.optimal)},
              {"baseline", config_json(plan.baseline)},
              {"total_flops", plan.objective_value},
              {"baseline_total_flops", plan.baseline_objective},
              {"reduction_fraction", plan.reduction_fraction},
              {"residual", plan.residual},
              {"coefficients", coefficients_json(c)}});
    return;
  }
  print_kv("target loss", si::format_sig3(l) + " nats");
  print_kv("inference tokens", si::format_count(d_inf));
  print_kv("optimal", config_text(plan.optimal));
  print_kv("chinchilla baseline", config_text(plan.baseline));
  print_kv("total FLOPs", si::format_sci3(opt_flops.total_flops) + " vs " +
                              si::format_sci3(base_flops.total_flops) + " baseline");
  print_kv("FLOP reduction", si::format_percent(plan.reduction_fraction));
}

InferenceDemand resolve_demand(const OptimizeCostOpts& opt, const PlannerConfig& config) {
  const bool by_totals = !opt.total_input_text.empty() || !opt.total_output_text.empty();
  const bool by_requests = !opt.requests_text.empty() || !opt.input_tokens_text.empty() ||
                           !opt.output_tokens_text.empty();
  if (by_totals && by_requests)
    throw FlagError(
        "give either --requests/--input-tokens/--output-tokens or "
        "--total-input/--total-output, not both");
  if (by_totals) {
    return InferenceDemand::from_totals(
        opt.total_input_text.empty() ? 0.0
                                     : flag_nonneg("--total-input", opt.total_input_text),
        opt.total_output_text.empty()
            ? 0.0
            : flag_nonneg("--total-output", opt.total_output_text));
  }
  const InferenceDemand& base = config.demand;
  return InferenceDemand(
      opt.requests_text.empty() ? base.requests
                                : flag_nonneg("--requests", opt.requests_text),
      opt.input_tokens_text.empty() ? base.input_tokens_per_request
                                    : flag_nonneg("--input-tokens", opt.input_tokens_text),
      opt.output_tokens_text.empty()
          ? base.output_tokens_per_request
          : flag_nonneg("--output-tokens", opt.output_tokens_text));
}

void run_optimize_cost(const OptimizeCostOpts& opt) {
  const Coefficients c = resolve_coefficients(opt.coeffs);
  const PlannerConfig config =
      opt.config_path.empty() ? PlannerConfig{} : load_planner_config(opt.config_path);
  const double l = resolve_target_loss(opt.loss_text, opt.match_text, c);
  const InferenceDemand demand = resolve_demand(opt, config);
  const CostPlan plan = solve_cost_optimal(l, config.hardware, config.mfu, demand, c);
  if (opt.json_output) {
    emit(json{{"command", "optimize-cost"},
              {"target_loss", l},
              {"requests", demand.requests},
              {"input_tokens", demand.total_input()},
              {"output_tokens", demand.total_output()},
              {"optimal", config_json(plan.plan.optimal)},
              {"baseline", config_json(plan.plan.baseline)},
              {"train_cost", plan.train_cost},
              {"input_cost", plan.input_cost},
              {"output_cost", plan.output_cost},
              {"total_cost", plan.total_cost},
              {"baseline_total_cost", plan.baseline_total_cost},
              {"savings_fraction", plan.savings_fraction},
              {"coefficients", coefficients_json(c)}});
    return;
  }
  print_kv("target loss", si::format_sig3(l) + " nats");
  print_kv("inference demand", si::format_count(demand.requests) + " requests (" +
                                   si::format_count(demand.total_tokens()) + " tokens)");
  print_kv("optimal", config_text(plan.plan.optimal));
  print_kv("chinchilla baseline", config_text(plan.plan.baseline));
  print_kv("cost breakdown", si::format_usd(plan.train_cost) + " train + " +
                                 si::format_usd(plan.input_cost) + " input + " +
                                 si::format_usd(plan.output_cost) + " output");
  print_kv("total cost", si::format_usd(plan.total_cost) + " vs " +
                             si::format_usd(plan.baseline_total_cost) + " baseline");
  print_kv("cost savings", si::format_percent(plan.savings_fraction));
}

std::vector<double> parse_grid_list(const std::string& flag, const std::string& text,
                                    bool allow_zero) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    values.push_back(allow_zero ? flag_nonneg(flag, item) : flag_positive(flag, item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] <= values[i - 1]) throw FlagError(flag + " values must be ascending");
  return values;
}

std::vector<double> geometric_grid(const std::string& flag_base, const std::string& min_text,
                                   const std::string& max_text,
                                   const std::string& steps_text) {
  if (min_text.empty() || max_text.empty() || steps_text.empty())
    throw FlagError(flag_base + "-min/-max/-steps must be given together");
  const double lo = flag_positive(flag_base + "-min", min_text);
  const double hi = flag_positive(flag_base + "-max", max_text);
  const int steps = flag_count(flag_base + "-steps", steps_text);
  if (lo > hi) throw FlagError(flag_base + "-min must not exceed " + flag_base + "-max");
  if (steps == 1) return {lo};
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    values.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (steps - 1)));
  return values;
}

std::vector<double> resolve_sweep_losses(const SweepOpts& opt, const Coefficients& c) {
  const bool by_sizes = !opt.sizes_text.empty() || !opt.size_min.empty();
  const bool by_losses = !opt.losses_text.empty() || !opt.loss_min.empty();
  if (by_sizes == by_losses)
    throw FlagError("give the row grid as --sizes/--size-min.. or --losses/--loss-min..");
  if (by_losses) {
    if (!opt.losses_text.empty()) return parse_grid_list("--losses", opt.losses_text, false);
    return geometric_grid("--loss", opt.loss_min, opt.loss_max, opt.loss_steps);
  }
  std::vector<double> sizes;
  if (!opt.sizes_text.empty()) {
    sizes = parse_grid_list("--sizes", opt.sizes_text, false);
  } else {
    sizes = geometric_grid("--size", opt.size_min, opt.size_max, opt.size_steps);
  }
  std::vector<double> losses;
  losses.reserve(sizes.size());
  for (double size : sizes) losses.push_back(loss_for_chinchilla_params(size, c));
  return losses;
}

std::vector<double> resolve_sweep_demands(const SweepOpts& opt) {
  const bool by_list = !opt.demands_text.empty();
  const bool by_range = !opt.demand_min.empty();
  if (by_list == by_range)
    throw FlagError(
        "give the demand grid as --demands or --demand-min/--demand-max/--demand-steps");
  if (by_list) return parse_grid_list("--demands", opt.demands_text, true);
  return geometric_grid("--demand", opt.demand_min, opt.demand_max, opt.demand_steps);
}

void run_sweep(const SweepOpts& opt, bool cost_mode) {
  const Coefficients c = resolve_coefficients(opt.coeffs);
  const std::vector<double> losses = resolve_sweep_losses(opt, c);
  const std::vector<double> demands = resolve_sweep_demands(opt);
  if (losses.size() * demands.size() > 1000000)
    throw FlagError("sweep would exceed 1e6 cells");

  ObjectiveBuilder builder;
  if (cost_mode) {
    const PlannerConfig config =
        opt.config_path.empty() ? PlannerConfig{} : load_planner_config(opt.config_path);
    const HardwareProfile hw = config.hardware;
    const MfuProfile mfu = config.mfu;
    const double in_per_req = config.demand.input_tokens_per_request;
    const double out_per_req = config.demand.output_tokens_per_request;
    builder = [hw, mfu, in_per_req, out_per_req](double requests) {
      return cost_objective(hw, mfu, InferenceDemand(requests, in_per_req, out_per_req));
    };
  } else {
    builder = [](double tokens) { return TradeoffObjective::compute(tokens); };
  }

  const SweepResult result = sweep_ratios(losses, demands, builder, c, !opt.serial);
  write_sweep_csv(result, opt.out_path);

  std::size_t invalid = 0;
  double ratio_min[3] = {1e308, 1e308, 1e308};
  double ratio_max[3] = {-1e308, -1e308, -1e308};
  for (const auto& cell : result.cells) {
    if (!cell.valid) {
      ++invalid;
      continue;
    }
    const double ratios[3] = {cell.flops_ratio, cell.params_ratio, cell.tokens_ratio};
    for (int i = 0; i < 3; ++i) {
      ratio_min[i] = std::min(ratio_min[i], ratios[i]);
      ratio_max[i] = std::max(ratio_max[i], ratios[i]);
    }
  }
  const std::size_t valid = result.cells.size() - invalid;

  if (opt.json_output) {
    json ranges;
    const char* names[3] = {"flops_ratio", "params_ratio", "tokens_ratio"};
    for (int i = 0; i < 3; ++i)
      ranges[names[i]] =
          valid ? json{{"min", ratio_min[i]}, {"max", ratio_max[i]}} : json(nullptr);
    emit(json{{"command", cost_mode ? "sweep-cost" : "sweep-compute"},
              {"rows", losses.size()},
              {"cols", demands.size()},
              {"valid_cells", valid},
              {"invalid_cells", invalid},
              {"ratio_ranges", ranges},
              {"out", opt.out_path}});
    return;
  }
  print_kv("cells", std::to_string(result.cells.size()) + " (" + std::to_string(valid) +
                        " valid, " + std::to_string(invalid) + " invalid)");
  if (valid) {
    print_kv("flops_ratio", "min " + si::format_sig3(ratio_min[0]) + ", max " +
                                si::format_sig3(ratio_max[0]));
    print_kv("params_ratio", "min " + si::format_sig3(ratio_min[1]) + ", max " +
                                 si::format_sig3(ratio_max[1]));
    print_kv("tokens_ratio", "min " + si::format_sig3(ratio_min[2]) + ", max " +
                                 si::format_sig3(ratio_max[2]));
  }
  print_kv("wrote", opt.out_path);
}

void run_fit(const FitOpts& opt) {
  std::vector<TrainingRun> runs = load_run_log_csv(opt.runs_path);
  const std::size_t total_rows = runs.size();
  std::optional<double> max_ratio;
  if (!opt.max_ratio_text.empty()) {
    max_ratio = flag_positive("--max-ratio", opt.max_ratio_text);
    runs = filter_by_ratio(runs, *max_ratio);
  }

  FitConfig config;
  config.huber_delta = flag_positive("--delta", opt.delta_text);
  config.max_iterations = flag_count("--max-iterations", opt.max_iterations_text);
  config.gradient_tolerance =
      flag_positive("--gradient-tolerance", opt.gradient_tolerance_text);

  FitReport report = fit(runs, config, !opt.serial);
  report.max_ratio_filter = max_ratio;

  if (!opt.out_coeffs_path.empty())
    save_coefficients_json(report.coefficients, opt.out_coeffs_path);

  if (opt.json_output) {
    json payload{{"command", "fit"},
                 {"coefficients", coefficients_json(report.coefficients)},
                 {"objective_value", report.objective_value},
                 {"winning_start",
                  json{{"a", report.winning_start.a},
                       {"b", report.winning_start.b},
                       {"e", report.winning_start.e},
                       {"alpha", report.winning_start.alpha},
                       {"beta", report.winning_start.beta}}},
                 {"runs_used", report.runs_used},
                 {"rows_in_file", total_rows}};
    payload["max_ratio_filter"] = max_ratio ? json(*max_ratio) : json(nullptr);
    if (!opt.out_coeffs_path.empty()) payload["out_coeffs"] = opt.out_coeffs_path;
    emit(payload);
    return;
  }
  const Coefficients& c = report.coefficients;
  std::printf("fitted coefficients     A=%.6g B=%.6g E=%.6g alpha=%.4f beta=%.4f\n", c.A,
              c.B, c.E, c.alpha, c.beta);
  print_kv("objective", si::format_sci3(report.objective_value));
  std::printf("winning start           a=%.4f b=%.4f e=%.4f alpha=%.2f beta=%.2f\n",
              report.winning_start.a, report.winning_start.b, report.winning_start.e,
              report.winning_start.alpha, report.winning_start.beta);
  print_kv("runs used", std::to_string(report.runs_used) + " of " +
                            std::to_string(total_rows) + " rows" +
                            (max_ratio ? " (ratio <= " + si::format_sig3(*max_ratio) + ")"
                                       : ""));
  if (!opt.out_coeffs_path.empty()) print_kv("wrote", opt.out_coeffs_path);
}

std::string dev_text(double ours, double reference) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.1f%%", (ours / reference - 1.0) * 100.0);
  return buf;
}

void run_tables(const CommonOpts& opt) {
  const Coefficients& c = Coefficients::chinchilla();
  const auto compute_rows = regenerate_compute_rows(c);
  const auto cost_rows = regenerate_cost_rows(c, HardwareProfile::a100_default(),
                                              MfuProfile::default_profile());

  if (opt.json_output) {
    json payload{{"command", "tables"}};
    json& compute = payload["compute"] = json::array();
    for (const auto& row : compute_rows) {
      compute.push_back(
          json{{"inference_tokens", row.ref->inference_tokens},
               {"loss", row.loss},
               {"printed_loss", row.ref->printed_loss},
               {"chinchilla",
                {{"params", row.chin.params},
                 {"tokens", row.chin.train_tokens},
                 {"total_flops", row.chin_total_flops},
                 {"reference_params", row.ref->chin_params},
                 {"reference_tokens", row.ref->chin_tokens},
                 {"reference_total_flops", row.ref->chin_total_flops}}},
               {"optimal",
                {{"params", row.opt.params},
                 {"tokens", row.opt.train_tokens},
                 {"total_flops", row.opt_total_flops},
                 {"reference_params", row.ref->opt_params},
                 {"reference_tokens", row.ref->opt_tokens},
                 {"reference_total_flops", row.ref->opt_total_flops}}},
               {"flop_reduction", row.flop_reduction},
               {"reference_flop_reduction", row.ref->flop_reduction},
               {"note", row.ref->note ? json(row.ref->note) : json(nullptr)}});
    }
    json& cost = payload["cost"] = json::array();
    for (const auto& row : cost_rows) {
      cost.push_back(json{{"requests", row.ref->requests},
                          {"loss", row.loss},
                          {"printed_loss", row.ref->printed_loss},
                          {"chinchilla",
                           {{"params", row.chin.params},
                            {"tokens", row.chin.train_tokens},
                            {"total_cost", row.chin_total_cost},
                            {"reference_params", row.ref->chin_params},
                            {"reference_tokens", row.ref->chin_tokens},
                            {"reference_total_cost", row.ref->chin_total_cost}}},
                          {"optimal",
                           {{"params", row.opt.params},
                            {"tokens", row.opt.train_tokens},
                            {"total_cost", row.opt_total_cost},
                            {"reference_params", row.ref->opt_params},
                            {"reference_tokens", row.ref->opt_tokens},
                            {"reference_total_cost", row.ref->opt_total_cost}}},
                          {"cost_savings", row.cost_savings},
                          {"reference_cost_savings", row.ref->cost_savings},
                          {"note", row.ref->note ? json(row.ref->note) : json(nullptr)}});
    }
    emit(payload);
    return;
  }

  std::printf("Compute-optimal vs Chinchilla, regenerated against the bundled reference\n");
  std::printf("%-6s %-6s | %-8s %-8s %-9s | %-8s %-8s %-9s | %s\n", "demand", "loss",
              "chin N", "chin D", "chin F", "opt N", "opt D", "opt F", "redn");
  for (const auto& row : compute_rows) {
    const auto& ref = *row.ref;
    std::printf("%-6s %-6s | %-8s %-8s %-9s | %-8s %-8s %-9s | %-6s (reference)\n",
                si::format_count(ref.inference_tokens).c_str(),
                si::format_sig3(ref.printed_loss).c_str(),
                si::format_count(ref.chin_params).c_str(),
                si::format_count(ref.chin_tokens).c_str(),
                si::format_sci3(ref.chin_total_flops).c_str(),
                si::format_count(ref.opt_params).c_str(),
                si::format_count(ref.opt_tokens).c_str(),
                si::format_sci3(ref.opt_total_flops).c_str(),
                si::format_percent(ref.flop_reduction).c_str());
    std::printf("%-6s %-6s | %-8s %-8s %-9s | %-8s %-8s %-9s | %-6s (regenerated)\n", "",
                si::format_sig3(row.loss).c_str(), si::format_count(row.chin.params).c_str(),
                si::format_count(row.chin.train_tokens).c_str(),
                si::format_sci3(row.chin_total_flops).c_str(),
                si::format_count(row.opt.params).c_str(),
                si::format_count(row.opt.train_tokens).c_str(),
                si::format_sci3(row.opt_total_flops).c_str(),
                si::format_percent(row.flop_reduction).c_str());
    std::printf("%-6s %-6s | %-8s %-8s %-9s | %-8s %-8s %-9s | %+.1fpp\n", "", "",
                dev_text(row.chin.params, ref.chin_params).c_str(),
                dev_text(row.chin.train_tokens, ref.chin_tokens).c_str(),
                dev_text(row.chin_total_flops, ref.chin_total_flops).c_str(),
                dev_text(row.opt.params, ref.opt_params).c_str(),
                dev_text(row.opt.train_tokens, ref.opt_tokens).c_str(),
                dev_text(row.opt_total_flops, ref.opt_total_flops).c_str(),
                (row.flop_reduction - ref.flop_reduction) * 100.0);
  }
  for (const auto& row : compute_rows)
    if (row.ref->note)
      std::printf("note (demand %s): %s\n",
                  si::format_count(row.ref->inference_tokens).c_str(), row.ref->note);

  std::printf("\nCost-optimal vs Chinchilla, regenerated against the bundled reference\n");
  std::printf("%-7s %-6s | %-8s %-8s %-8s | %-8s %-8s %-8s | %s\n", "reqs", "loss",
              "chin N", "chin D", "chin $", "opt N", "opt D", "opt $", "saved");
  for (const auto& row : cost_rows) {
    const auto& ref = *row.ref;
    std::printf("%-7s %-6s | %-8s %-8s %-8s | %-8s %-8s %-8s | %-6s (reference)\n",
                si::format_count(ref.requests).c_str(),
                si::format_sig3(ref.printed_loss).c_str(),
                si::format_count(ref.chin_params).c_str(),
                si::format_count(ref.chin_tokens).c_str(),
                si::format_usd(ref.chin_total_cost).c_str(),
                si::format_count(ref.opt_params).c_str(),
                si::format_count(ref.opt_tokens).c_str(),
                si::format_usd(ref.opt_total_cost).c_str(),
                si::format_percent(ref.cost_savings).c_str());
    std::printf("%-7s %-6s | %-8s %-8s %-8s | %-8s %-8s %-8s | %-6s (regenerated)\n", "",
                si::format_sig3(row.loss).c_str(), si::format_count(row.chin.params).c_str(),
                si::format_count(row.chin.train_tokens).c_str(),
                si::format_usd(row.chin_total_cost).c_str(),
                si::format_count(row.opt.params).c_str(),
                si::format_count(row.opt.train_tokens).c_str(),
                si::format_usd(row.opt_total_cost).c_str(),
                si::format_percent(row.cost_savings).c_str());
    std::printf("%-7s %-6s | %-8s %-8s %-8s | %-8s %-8s %-8s | %+.1fpp\n", "", "",
                dev_text(row.chin.params, ref.chin_params).c_str(),
                dev_text(row.chin.train_tokens, ref.chin_tokens).c_str(),
                dev_text(row.chin_total_cost, ref.chin_total_cost).c_str(),
                dev_text(row.opt.params, ref.opt_params).c_str(),
                dev_text(row.opt.train_tokens, ref.opt_tokens).c_str(),
                dev_text(row.opt_total_cost, ref.opt_total_cost).c_str(),
                (row.cost_savings - ref.cost_savings) * 100.0);
  }
  for (const auto& row : cost_rows)
    if (row.ref->note)
      std::printf("note (requests %s): %s\n", si::format_count(row.ref->requests).c_str(),
                  row.ref->note);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inference-aware scaling-law planner"};
  app.require_subcommand(1);

  LossOpts loss_opts;
  CommonOpts baseline_common;
  QualityOpts baseline_quality;
  OptimizeComputeOpts oc_opts;
  OptimizeCostOpts cost_opts;
  SweepOpts sweep_compute_opts, sweep_cost_opts;
  FitOpts fit_opts;
  CommonOpts tables_opts;

  const auto add_common = [](CLI::App* cmd, CommonOpts& opts, bool with_coeffs = true) {
    if (with_coeffs)
      cmd->add_option("--coeffs", opts.coeffs,
                      "Coefficient preset name or JSON file (default: chinchilla)");
    cmd->add_flag("--json", opts.json_output, "Emit a machine-readable JSON payload");
  };
  const auto add_quality = [](CLI::App* cmd, QualityOpts& opts) {
    cmd->add_option("--loss", opts.loss_text, "Target pre-training loss in nats");
    cmd->add_option("--match-chinchilla", opts.match_text,
                    "Target the loss of a Chinchilla-optimal model of this size");
  };

  CLI::App* cmd_loss =
      app.add_subcommand("loss", "Evaluate the loss law at (params, tokens)");
  cmd_loss->add_option("--params", loss_opts.params_text, "Model size, e.g. 70B")
      ->required();
  cmd_loss->add_option("--tokens", loss_opts.tokens_text, "Training tokens, e.g. 4.26T")
      ->required();
  add_common(cmd_loss, loss_opts);

  CLI::App* cmd_baseline = app.add_subcommand(
      "baseline", "Chinchilla-optimal configuration for a target quality");
  add_quality(cmd_baseline, baseline_quality);
  add_common(cmd_baseline, baseline_common);

  CLI::App* cmd_oc = app.add_subcommand(
      "optimize-compute", "Minimize training + inference FLOPs at fixed quality");
  add_quality(cmd_oc, oc_opts);
  cmd_oc->add_option("--inference-tokens", oc_opts.inference_tokens_text,
                     "Lifetime inference tokens, e.g. 10T (default 0)");
  add_common(cmd_oc, oc_opts);

  CLI::App* cmd_cost = app.add_subcommand(
      "optimize-cost", "Minimize training + inference dollar cost at fixed quality");
  add_quality(cmd_cost, cost_opts);
  cmd_cost->add_option("--requests", cost_opts.requests_text, "Lifetime inference requests");
  cmd_cost->add_option("--input-tokens", cost_opts.input_tokens_text,
                       "Input tokens per request (default 70)");
  cmd_cost->add_option("--output-tokens", cost_opts.output_tokens_text,
                       "Output tokens per request (default 215)");
  cmd_cost->add_option("--total-input", cost_opts.total_input_text,
                       "Raw lifetime input-token total (alternative to --requests)");
  cmd_cost->add_option("--total-output", cost_opts.total_output_text,
                       "Raw lifetime output-token total (alternative to --requests)");
  cmd_cost->add_option("--config", cost_opts.config_path,
                       "JSON config with hardware/mfu/demand sections");
  add_common(cmd_cost, cost_opts);

  const auto add_sweep = [&add_common](CLI::App* cmd, SweepOpts& opts, bool cost_mode) {
    cmd->add_option("--sizes", opts.sizes_text, "Comma list of Chinchilla-equivalent sizes");
    cmd->add_option("--size-min", opts.size_min);
    cmd->add_option("--size-max", opts.size_max);
    cmd->add_option("--size-steps", opts.size_steps);
    cmd->add_option("--losses", opts.losses_text, "Comma list of target losses");
    cmd->add_option("--loss-min", opts.loss_min);
    cmd->add_option("--loss-max", opts.loss_max);
    cmd->add_option("--loss-steps", opts.loss_steps);
    cmd->add_option("--demands", opts.demands_text,
                    cost_mode ? "Comma list of request counts (0 allowed)"
                              : "Comma list of inference-token counts (0 allowed)");
    cmd->add_option("--demand-min", opts.demand_min);
    cmd->add_option("--demand-max", opts.demand_max);
    cmd->add_option("--demand-steps", opts.demand_steps);
    cmd->add_option("--out", opts.out_path, "Output CSV path")->required();
    cmd->add_flag("--serial", opts.serial, "Disable parallel cell execution");
    if (cost_mode)
      cmd->add_option("--config", opts.config_path,
                      "JSON config with hardware/mfu/demand sections");
    add_common(cmd, opts, true);
  };
  CLI::App* cmd_sweep_compute = app.add_subcommand(
      "sweep-compute", "Grid of compute-optimal vs Chinchilla ratios, written as CSV");
  add_sweep(cmd_sweep_compute, sweep_compute_opts, false);
  CLI::App* cmd_sweep_cost = app.add_subcommand(
      "sweep-cost", "Grid of cost-optimal vs Chinchilla ratios, written as CSV");
  add_sweep(cmd_sweep_cost, sweep_cost_opts, true);

  CLI::App* cmd_fit =
      app.add_subcommand("fit", "Fit loss-law coefficients from a run-log CSV");
  cmd_fit->add_option("--runs", fit_opts.runs_path, "CSV with header params,tokens,loss")
      ->required();
  cmd_fit->add_option("--max-ratio", fit_opts.max_ratio_text,
                      "Keep only runs with tokens/param <= this ratio");
  cmd_fit->add_option("--delta", fit_opts.delta_text, "Huber threshold (default 1e-3)");
  cmd_fit->add_option("--max-iterations", fit_opts.max_iterations_text);
  cmd_fit->add_option("--gradient-tolerance", fit_opts.gradient_tolerance_text);
  cmd_fit->add_option("--out-coeffs", fit_opts.out_coeffs_path,
                      "Write fitted coefficients as JSON usable via --coeffs");
  cmd_fit->add_flag("--serial", fit_opts.serial, "Disable parallel grid starts");
  add_common(cmd_fit, fit_opts, /*with_coeffs=*/false);

  CLI::App* cmd_tables = app.add_subcommand(
      "tables", "Regenerate the bundled reference tables and report deviations");
  add_common(cmd_tables, tables_opts, /*with_coeffs=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_loss->parsed()) {
      run_loss(loss_opts);
    } else if (cmd_baseline->parsed()) {
      run_baseline(baseline_common, baseline_quality);
    } else if (cmd_oc->parsed()) {
      run_optimize_compute(oc_opts);
    } else if (cmd_cost->parsed()) {
      run_optimize_cost(cost_opts);
    } else if (cmd_sweep_compute->parsed()) {
      run_sweep(sweep_compute_opts, false);
    } else if (cmd_sweep_cost->parsed()) {
      run_sweep(sweep_cost_opts, true);
    } else if (cmd_fit->parsed()) {
      run_fit(fit_opts);
    } else if (cmd_tables->parsed()) {
      run_tables(tables_opts);
    }
    return 0;
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
