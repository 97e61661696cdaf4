#include "scaleplan/cost_model.hpp"

#include <cmath>

#include "scaleplan/errors.hpp"

namespace scaleplan {

namespace {

void require_positive_finite(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0))
    throw ValidationError(std::string(what) + " must be finite and > 0");
}

void require_nonneg_finite(double v, const char* what) {
  if (!std::isfinite(v) || v < 0)
    throw ValidationError(std::string(what) + " must be finite and >= 0");
}

void require_mfu(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0) || v > 1)
    throw ValidationError(std::string(what) + " must be in (0, 1]");
}

}  // namespace

HardwareProfile::HardwareProfile(double train_price_per_hour_, double train_peak_ops_,
                                 double inf_price_per_hour_, double inf_peak_ops_)
    : train_price_per_hour(train_price_per_hour_),
      train_peak_ops(train_peak_ops_),
      inf_price_per_hour(inf_price_per_hour_),
      inf_peak_ops(inf_peak_ops_) {
  require_positive_finite(train_price_per_hour, "train_price_per_hour");
  require_positive_finite(train_peak_ops, "train_peak_ops");
  require_positive_finite(inf_price_per_hour, "inf_price_per_hour");
  require_positive_finite(inf_peak_ops, "inf_peak_ops");
}

const HardwareProfile& HardwareProfile::a100_default() {
  static const HardwareProfile hw{1.50, 3.12e14, 1.10, 6.24e14};
  return hw;
}

MfuProfile::MfuProfile(double train_mfu_, double input_mfu_, double output_mfu_)
    : train_mfu(train_mfu_), input_mfu(input_mfu_), output_mfu(output_mfu_) {
  require_mfu(train_mfu, "train_mfu");
  require_mfu(input_mfu, "input_mfu");
  require_mfu(output_mfu, "output_mfu");
}

const MfuProfile& MfuProfile::default_profile() {
  static const MfuProfile mfu{0.5, 0.5, 0.01};
  return mfu;
}

InferenceDemand::InferenceDemand(double requests_, double input_tokens_per_request_,
                                 double output_tokens_per_request_)
    : requests(requests_),
      input_tokens_per_request(input_tokens_per_request_),
      output_tokens_per_request(output_tokens_per_request_) {
  require_nonneg_finite(requests, "requests");
  require_nonneg_finite(input_tokens_per_request, "input_tokens_per_request");
  require_nonneg_finite(output_tokens_per_request, "output_tokens_per_request");
}

InferenceDemand InferenceDemand::from_totals(double total_input, double total_output) {
  require_nonneg_finite(total_input, "total_input");
  require_nonneg_finite(total_output, "total_output");
  if (total_input == 0 && total_output == 0) return of_requests(0);
  return InferenceDemand(1.0, total_input, total_output);
}

InferenceDemand InferenceDemand::of_requests(double requests) {
  return InferenceDemand(requests, kDefaultInputTokens, kDefaultOutputTokens);
}

double cost_per_op(double price_per_hour, double peak_ops) {
  require_positive_finite(price_per_hour, "price_per_hour");
  require_positive_finite(peak_ops, "peak_ops");
  return price_per_hour / (3600.0 * peak_ops);
}

TradeoffObjective cost_objective(const HardwareProfile& hw, const MfuProfile& mfu,
                                 const InferenceDemand& demand) {
  const double c_train = cost_per_op(hw.train_price_per_hour, hw.train_peak_ops);
  const double c_inf = cost_per_op(hw.inf_price_per_hour, hw.inf_peak_ops);
  const double per_token = 6.0 * c_train / mfu.train_mfu;
  const double per_param = 2.0 * c_inf * (demand.total_input() / mfu.input_mfu +
                                          demand.total_output() / mfu.output_mfu);
  return TradeoffObjective(per_token, per_param);
}

CostBreakdown evaluate_cost(const ModelConfig& cfg, const HardwareProfile& hw,
                            const MfuProfile& mfu, const InferenceDemand& demand) {
  const double c_train = cost_per_op(hw.train_price_per_hour, hw.train_peak_ops);
  const double c_inf = cost_per_op(hw.inf_price_per_hour, hw.inf_peak_ops);
  CostBreakdown b{};
  b.train_cost = 6.0 * cfg.params * cfg.train_tokens * c_train / mfu.train_mfu;
  b.input_cost = 2.0 * cfg.params * demand.total_input() * c_inf / mfu.input_mfu;
  b.output_cost = 2.0 * cfg.params * demand.total_output() * c_inf / mfu.output_mfu;
  b.total_cost = b.train_cost + b.input_cost + b.output_cost;
  return b;
}

CostPlan solve_cost_optimal(double target_loss, const HardwareProfile& hw,
                            const MfuProfile& mfu, const InferenceDemand& demand,
                            const Coefficients& c) {
  OptimalPlan plan = solve_optimal(target_loss, cost_objective(hw, mfu, demand), c);
  CostBreakdown opt = evaluate_cost(plan.optimal, hw, mfu, demand);
  const CostBreakdown base = evaluate_cost(plan.baseline, hw, mfu, demand);
  if (opt.total_cost > base.total_cost) {
    // The breakdown is a second arithmetic route to the objective; if its
    // rounding disagrees about which config is cheaper, keep the baseline.
    plan.optimal = plan.baseline;
    plan.objective_value = plan.baseline_objective;
    plan.reduction_fraction = 0.0;
    opt = base;
  }
  return CostPlan{plan,
                  opt.train_cost,
                  opt.input_cost,
                  opt.output_cost,
                  opt.total_cost,
                  base.total_cost,
                  1.0 - opt.total_cost / base.total_cost};
}

}  // namespace scaleplan
