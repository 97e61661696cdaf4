#include "scaleplan/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scaleplan/errors.hpp"

namespace scaleplan {

TradeoffObjective::TradeoffObjective(double per_token_weight_, double per_param_weight_)
    : per_token_weight(per_token_weight_),
      per_param_weight(per_param_weight_),
      rho(per_param_weight_ / per_token_weight_) {
  if (!std::isfinite(per_token_weight) || !(per_token_weight > 0))
    throw ValidationError("per_token_weight must be finite and > 0");
  if (!std::isfinite(per_param_weight) || per_param_weight < 0)
    throw ValidationError("per_param_weight must be finite and >= 0");
}

TradeoffObjective TradeoffObjective::compute(double inference_tokens) {
  if (!std::isfinite(inference_tokens) || inference_tokens < 0)
    throw ValidationError("inference_tokens must be finite and >= 0");
  return TradeoffObjective(6.0, 2.0 * inference_tokens);
}

double LagrangeRootFn::value(double train_tokens) const {
  const double decay = std::pow(train_tokens, -beta);
  return constant_term + decay_coeff * decay + demand_coeff * decay / train_tokens;
}

double LagrangeRootFn::slope(double train_tokens) const {
  const double decay = std::pow(train_tokens, -beta);
  return -beta * decay_coeff * decay / train_tokens -
         (beta + 1.0) * demand_coeff * decay / (train_tokens * train_tokens);
}

LagrangeRootFn lagrange_root_fn(double target_loss, double rho, const Coefficients& c) {
  if (!(target_loss > c.E))
    throw UnachievableLoss("loss " + std::to_string(target_loss) +
                           " is at or below the asymptote E = " + std::to_string(c.E));
  if (!std::isfinite(rho) || rho < 0) throw ValidationError("rho must be finite and >= 0");
  const double data_weight = c.beta * c.B / c.alpha;
  return LagrangeRootFn{c.E - target_loss, data_weight + c.B, rho * data_weight, c.beta};
}

double recover_params(double root_tokens, double rho, const Coefficients& c) {
  if (!std::isfinite(root_tokens) || !(root_tokens > 0))
    throw ValidationError("root_tokens must be finite and > 0");
  const double decay = std::pow(root_tokens, -c.beta);
  const double params_term =
      (c.beta * c.B / c.alpha) * (decay + rho * decay / root_tokens);
  return std::pow(c.A / params_term, 1.0 / c.alpha);
}

OptimalPlan solve_optimal(double target_loss, const TradeoffObjective& obj,
                          const Coefficients& c) {
  const ModelConfig base = chinchilla_baseline(target_loss, c);
  const double base_value = obj.value(base);

  const LagrangeRootFn fn = lagrange_root_fn(target_loss, obj.rho, c);
  if (obj.rho == 0.0) {
    // No per-param pressure: the problem is the training-compute one and the
    // closed form is already the answer.
    return OptimalPlan{base, target_loss, base_value, base, base_value, 0.0,
                       fn.value(base.train_tokens)};
  }

  RootOptions root_opt;
  root_opt.residual_scale = target_loss - c.E;
  const double tokens = solve_root([&fn](double d) { return fn.value(d); },
                                   [&fn](double d) { return fn.slope(d); },
                                   base.train_tokens, root_opt);
  const ModelConfig optimal(recover_params(tokens, obj.rho, c), tokens);
  // The baseline is a feasible point of the same problem, so it bounds the
  // objective from above; the root point's evaluated value can cross that
  // bound only through rounding, and only when the demand is so small that
  // the two configurations coincide to machine precision.
  const double value = std::min(obj.value(optimal), base_value);
  return OptimalPlan{optimal,    target_loss,
                     value,      base,
                     base_value, 1.0 - value / base_value,
                     fn.value(optimal.train_tokens)};
}

}  // namespace scaleplan
