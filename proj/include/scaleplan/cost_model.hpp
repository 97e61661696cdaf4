#pragma once

#include "scaleplan/optimizer.hpp"

namespace scaleplan {

/// Rental price and peak throughput of the training and inference fleets.
struct HardwareProfile {
  double train_price_per_hour;  // USD per device-hour
  double train_peak_ops;        // ops/s at training precision
  double inf_price_per_hour;    // USD per device-hour
  double inf_peak_ops;          // ops/s at inference precision

  HardwareProfile(double train_price_per_hour, double train_peak_ops,
                  double inf_price_per_hour, double inf_peak_ops);

  /// Training on A100-80GB at $1.50/hr (3.12e14 dense BF16 ops/s), inference
  /// on A100-40GB at $1.10/hr after INT8 quantization (6.24e14 ops/s).
  static const HardwareProfile& a100_default();
};

/// Model FLOPs Utilization per phase, each in (0, 1]. Prompt processing runs
/// near training utilization; sequential generation runs far below it.
struct MfuProfile {
  double train_mfu;
  double input_mfu;
  double output_mfu;

  MfuProfile(double train_mfu, double input_mfu, double output_mfu);

  static const MfuProfile& default_profile();  // (0.5, 0.5, 0.01)
};

/// Lifetime request volume and per-request token shape. Totals are the only
/// thing downstream math consumes, so raw token totals normalize to the same
/// representation.
struct InferenceDemand {
  double requests;
  double input_tokens_per_request;
  double output_tokens_per_request;

  InferenceDemand(double requests, double input_tokens_per_request,
                  double output_tokens_per_request);

  static InferenceDemand from_totals(double total_input, double total_output);
  /// Default request shape: 70 input + 215 output tokens.
  static InferenceDemand of_requests(double requests);

  double total_input() const { return requests * input_tokens_per_request; }
  double total_output() const { return requests * output_tokens_per_request; }
  double total_tokens() const { return total_input() + total_output(); }

  static constexpr double kDefaultInputTokens = 70.0;
  static constexpr double kDefaultOutputTokens = 215.0;
};

/// USD per operation at full utilization: price / (3600 * peak_ops).
double cost_per_op(double price_per_hour, double peak_ops);

/// Dollar-cost objective weights:
///   a = 6 * C_tr / U_tr           (USD per param per training token)
///   b = 2 * C_inf * (D_inp / U_inp + D_out / U_out)   (USD per param)
TradeoffObjective cost_objective(const HardwareProfile& hw, const MfuProfile& mfu,
                                 const InferenceDemand& demand);

struct CostBreakdown {
  double train_cost;
  double input_cost;
  double output_cost;
  double total_cost;  // always exactly the sum of the three
};

/// Direct evaluation, no optimization.
CostBreakdown evaluate_cost(const ModelConfig& cfg, const HardwareProfile& hw,
                            const MfuProfile& mfu, const InferenceDemand& demand);

struct CostPlan {
  OptimalPlan plan;
  double train_cost;
  double input_cost;
  double output_cost;
  double total_cost;
  double baseline_total_cost;
  double savings_fraction;  // 1 - total_cost / baseline_total_cost
};

CostPlan solve_cost_optimal(double target_loss, const HardwareProfile& hw,
                            const MfuProfile& mfu, const InferenceDemand& demand,
                            const Coefficients& c);

}  // namespace scaleplan
