#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "scaleplan/coefficients.hpp"

namespace scaleplan {

/// One observed training run: the final (smoothed) loss reached by a model of
/// `params` parameters trained on `train_tokens` tokens.
struct TrainingRun {
  double params;
  double train_tokens;
  double final_loss;  // nats, > 0

  TrainingRun(double params, double train_tokens, double final_loss);

  double tokens_per_param() const { return train_tokens / params; }
};

/// Log-space parameterization of the loss-law coefficients:
/// A = exp(a), B = exp(b), E = exp(e); alpha and beta are fit directly.
struct FitParams {
  double a;
  double b;
  double e;
  double alpha;
  double beta;

  Coefficients to_coefficients() const;  // throws ValidationError out of bounds
  bool maps_to_valid_coefficients() const;
};

/// Full cross product of alpha, beta in {0.1, 0.3, 0.5, 0.7},
/// A, B in {10, 100, 500} and E in {0.5, 1, 2} (all log-space): 432 starts.
/// Brackets the Chinchilla coefficients and every shipped preset.
std::vector<FitParams> default_start_grid();

struct FitConfig {
  double huber_delta = 1e-3;
  std::vector<FitParams> grid = default_start_grid();
  int max_iterations = 500;
  double gradient_tolerance = 1e-9;
};

struct FitReport {
  Coefficients coefficients;  // exponentiated winner
  double objective_value;     // lowest converged objective across the grid
  FitParams winning_start;
  std::size_t runs_used;
  std::optional<double> max_ratio_filter;
};

/// log(exp(x1) + exp(x2) + exp(x3)) via the max shift; does not overflow for
/// inputs within roughly +-700.
double lse3(double x1, double x2, double x3);

/// r^2/2 inside |r| <= delta, delta*(|r| - delta/2) outside; C1 at the boundary.
double huber(double delta, double r);
double huber_slope(double delta, double r);

/// Sum over runs of Huber(delta, LSE[a - alpha*ln N, b - beta*ln D, e] - ln L).
/// Addends are accumulated in sorted order, so the value is independent of
/// run ordering.
double fit_objective(const FitParams& p, std::span<const TrainingRun> runs,
                     double delta);

/// Exact gradient of fit_objective over (a, b, e, alpha, beta), same sorted
/// accumulation per component.
std::array<double, 5> fit_objective_gradient(const FitParams& p,
                                             std::span<const TrainingRun> runs,
                                             double delta);

/// Multistart quasi-Newton fit. Requires at least 6 runs spanning two or more
/// distinct sizes and token counts. Every grid start is minimized; the lowest
/// converged objective whose coefficients pass the Coefficients bounds wins,
/// ties broken by grid order. Starts are independent, so the parallel path
/// returns a bitwise-identical report.
FitReport fit(std::span<const TrainingRun> runs, const FitConfig& config = {},
              bool parallel = true);

/// Runs with train_tokens / params <= max_tokens_per_param, original order kept.
std::vector<TrainingRun> filter_by_ratio(std::span<const TrainingRun> runs,
                                         double max_tokens_per_param);

}  // namespace scaleplan
