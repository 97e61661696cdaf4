#pragma once

#include "scaleplan/root_finding.hpp"
#include "scaleplan/scaling_law.hpp"

namespace scaleplan {

/// Objective weights for  a * N * D_tr + b * N.  The pure-compute problem is
/// (a, b) = (6, 2 * inference_tokens); the dollar-cost problem supplies
/// price- and utilization-scaled weights. Only the ratio rho = b/a moves the
/// optimum; the weights themselves set the objective's units.
struct TradeoffObjective {
  double per_token_weight;  // a, > 0
  double per_param_weight;  // b, >= 0
  double rho;               // b / a

  TradeoffObjective(double per_token_weight, double per_param_weight);

  /// Total-FLOPs objective for a lifetime inference volume: 6ND + 2N*D_inf.
  static TradeoffObjective compute(double inference_tokens);

  double value(const ModelConfig& cfg) const {
    return per_token_weight * cfg.params * cfg.train_tokens +
           per_param_weight * cfg.params;
  }
};

/// First-order (Lagrange) condition for minimizing a*N*D + b*N on a fixed
/// loss contour, reduced to one equation in the training-token count:
///
///   g(D) = (E - l) + (beta*B/alpha + B) * D^-beta
///        + rho * (beta*B/alpha) * D^-(beta+1)
///
/// g is strictly decreasing on D > 0, diverges to +inf as D -> 0 and tends to
/// E - l < 0, so it has exactly one positive root.
struct LagrangeRootFn {
  double constant_term;  // E - target_loss
  double decay_coeff;    // beta*B/alpha + B, multiplies D^-beta
  double demand_coeff;   // rho * beta*B/alpha, multiplies D^-(beta+1)
  double beta;

  double value(double train_tokens) const;
  double slope(double train_tokens) const;
};

LagrangeRootFn lagrange_root_fn(double target_loss, double rho, const Coefficients& c);

/// Parameter count paired with a root of the Lagrange condition:
/// solves A * N^-alpha = (beta*B/alpha) * (D^-beta + rho * D^-(beta+1)).
double recover_params(double root_tokens, double rho, const Coefficients& c);

struct OptimalPlan {
  ModelConfig optimal;
  double target_loss;
  double objective_value;
  ModelConfig baseline;        // Chinchilla baseline at the same loss
  double baseline_objective;   // objective evaluated at the baseline
  double reduction_fraction;   // 1 - objective_value / baseline_objective
  double residual;             // root-equation value at the returned tokens
};

/// Minimizes obj over the target_loss contour. The baseline is always a
/// feasible point of the same problem, so the returned objective value never
/// exceeds the baseline's; with zero per-param weight the two coincide and
/// the closed form is returned directly.
OptimalPlan solve_optimal(double target_loss, const TradeoffObjective& obj,
                          const Coefficients& c);

}  // namespace scaleplan
