#include "scaleplan/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "scaleplan/errors.hpp"
#include "scaleplan/lbfgs.hpp"

namespace scaleplan {

TrainingRun::TrainingRun(double params_, double train_tokens_, double final_loss_)
    : params(params_), train_tokens(train_tokens_), final_loss(final_loss_) {
  if (!std::isfinite(params) || !(params > 0))
    throw ValidationError("run params must be finite and > 0");
  if (!std::isfinite(train_tokens) || !(train_tokens > 0))
    throw ValidationError("run train_tokens must be finite and > 0");
  if (!std::isfinite(final_loss) || !(final_loss > 0))
    throw ValidationError("run final_loss must be finite and > 0");
}

Coefficients FitParams::to_coefficients() const {
  return Coefficients(std::exp(a), std::exp(b), std::exp(e), alpha, beta);
}

bool FitParams::maps_to_valid_coefficients() const {
  const double A = std::exp(a);
  const double B = std::exp(b);
  const double E = std::exp(e);
  return std::isfinite(A) && A > 0 && std::isfinite(B) && B > 0 && std::isfinite(E) &&
         std::isfinite(alpha) && alpha > 0 && alpha < 2 && std::isfinite(beta) &&
         beta > 0 && beta < 2;
}

std::vector<FitParams> default_start_grid() {
  static const double alphas[] = {0.1, 0.3, 0.5, 0.7};
  static const double betas[] = {0.1, 0.3, 0.5, 0.7};
  static const double log_weights[] = {std::log(10.0), std::log(100.0), std::log(500.0)};
  static const double log_asymptotes[] = {std::log(0.5), 0.0, std::log(2.0)};
  std::vector<FitParams> grid;
  grid.reserve(432);
  for (double alpha : alphas)
    for (double beta : betas)
      for (double a : log_weights)
        for (double b : log_weights)
          for (double e : log_asymptotes) grid.push_back(FitParams{a, b, e, alpha, beta});
  return grid;
}

double lse3(double x1, double x2, double x3) {
  const double m = std::max(x1, std::max(x2, x3));
  if (!std::isfinite(m)) return m;
  return m + std::log(std::exp(x1 - m) + std::exp(x2 - m) + std::exp(x3 - m));
}

double huber(double delta, double r) {
  const double a = std::abs(r);
  return a <= delta ? 0.5 * r * r : delta * (a - 0.5 * delta);
}

double huber_slope(double delta, double r) {
  if (std::abs(r) <= delta) return r;
  return r > 0 ? delta : -delta;
}

namespace {

// Logs of the run columns, computed once per fit.
struct RunLogs {
  std::vector<double> ln_params;
  std::vector<double> ln_tokens;
  std::vector<double> ln_loss;

  explicit RunLogs(std::span<const TrainingRun> runs) {
    ln_params.reserve(runs.size());
    ln_tokens.reserve(runs.size());
    ln_loss.reserve(runs.size());
    for (const auto& r : runs) {
      ln_params.push_back(std::log(r.params));
      ln_tokens.push_back(std::log(r.train_tokens));
      ln_loss.push_back(std::log(r.final_loss));
    }
  }

  std::size_t size() const { return ln_loss.size(); }
};

// Sum with the addends sorted first, so the result cannot depend on the order
// the runs arrived in.
double sorted_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0;
  for (double t : terms) s += t;
  return s;
}

// Objective and (optionally) gradient of the Huber-over-LSE fit.
double eval_fit(const RunLogs& logs, const double p[5], double delta,
                std::array<double, 5>* grad_out) {
  const double a = p[0], b = p[1], e = p[2], alpha = p[3], beta = p[4];
  const std::size_t n = logs.size();

  std::vector<double> value_terms(n);
  std::array<std::vector<double>, 5> grad_terms;
  if (grad_out)
    for (auto& v : grad_terms) v.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    const double u1 = a - alpha * logs.ln_params[i];
    const double u2 = b - beta * logs.ln_tokens[i];
    const double u3 = e;
    const double m = std::max(u1, std::max(u2, u3));
    const double w1 = std::exp(u1 - m);
    const double w2 = std::exp(u2 - m);
    const double w3 = std::exp(u3 - m);
    const double sum = w1 + w2 + w3;
    const double residual = m + std::log(sum) - logs.ln_loss[i];
    value_terms[i] = huber(delta, residual);
    if (grad_out) {
      const double hs = huber_slope(delta, residual);
      const double sw1 = w1 / sum;  // softmax weights
      const double sw2 = w2 / sum;
      const double sw3 = w3 / sum;
      grad_terms[0][i] = hs * sw1;
      grad_terms[1][i] = hs * sw2;
      grad_terms[2][i] = hs * sw3;
      grad_terms[3][i] = -hs * sw1 * logs.ln_params[i];
      grad_terms[4][i] = -hs * sw2 * logs.ln_tokens[i];
    }
  }

  if (grad_out)
    for (int k = 0; k < 5; ++k) (*grad_out)[static_cast<std::size_t>(k)] = sorted_sum(grad_terms[static_cast<std::size_t>(k)]);
  return sorted_sum(value_terms);
}

void validate_fit_inputs(std::span<const TrainingRun> runs, const FitConfig& config) {
  if (!(config.huber_delta > 0)) throw ValidationError("huber_delta must be > 0");
  if (config.grid.empty()) throw ValidationError("starting grid must be non-empty");
  if (config.max_iterations <= 0) throw ValidationError("max_iterations must be > 0");
  if (!(config.gradient_tolerance > 0))
    throw ValidationError("gradient_tolerance must be > 0");

  if (runs.size() < 6)
    throw InsufficientData("need at least 6 runs, got " + std::to_string(runs.size()));
  std::set<double> sizes, tokens;
  for (const auto& r : runs) {
    sizes.insert(r.params);
    tokens.insert(r.train_tokens);
  }
  if (sizes.size() < 2)
    throw InsufficientData("runs must span at least 2 distinct parameter counts");
  if (tokens.size() < 2)
    throw InsufficientData("runs must span at least 2 distinct token counts");
}

}  // namespace

double fit_objective(const FitParams& p, std::span<const TrainingRun> runs, double delta) {
  if (runs.empty()) throw ValidationError("runs must be non-empty");
  if (!(delta > 0)) throw ValidationError("delta must be > 0");
  const RunLogs logs(runs);
  const double x[5] = {p.a, p.b, p.e, p.alpha, p.beta};
  return eval_fit(logs, x, delta, nullptr);
}

std::array<double, 5> fit_objective_gradient(const FitParams& p,
                                             std::span<const TrainingRun> runs,
                                             double delta) {
  if (runs.empty()) throw ValidationError("runs must be non-empty");
  if (!(delta > 0)) throw ValidationError("delta must be > 0");
  const RunLogs logs(runs);
  const double x[5] = {p.a, p.b, p.e, p.alpha, p.beta};
  std::array<double, 5> grad;
  eval_fit(logs, x, delta, &grad);
  return grad;
}

FitReport fit(std::span<const TrainingRun> runs, const FitConfig& config, bool parallel) {
  validate_fit_inputs(runs, config);
  const RunLogs logs(runs);

  LbfgsOptions lbfgs_opt;
  lbfgs_opt.max_iterations = config.max_iterations;
  lbfgs_opt.gradient_tolerance = config.gradient_tolerance;

  struct StartOutcome {
    bool eligible = false;
    double objective = std::numeric_limits<double>::infinity();
    FitParams params{};
  };
  std::vector<StartOutcome> outcomes(config.grid.size());

  const long long starts = static_cast<long long>(config.grid.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long k = 0; k < starts; ++k) {
    const FitParams& s = config.grid[static_cast<std::size_t>(k)];
    const ObjectiveFn objective = [&logs, &config](std::span<const double> x,
                                                   std::span<double> grad) {
      std::array<double, 5> g;
      const double v = eval_fit(logs, x.data(), config.huber_delta, &g);
      std::copy(g.begin(), g.end(), grad.begin());
      return v;
    };
    const LbfgsResult r =
        lbfgs_minimize(objective, {s.a, s.b, s.e, s.alpha, s.beta}, lbfgs_opt);
    const FitParams p{r.x[0], r.x[1], r.x[2], r.x[3], r.x[4]};
    auto& out = outcomes[static_cast<std::size_t>(k)];
    out.objective = r.value;
    out.params = p;
    out.eligible = r.converged && p.maps_to_valid_coefficients();
  }

  // Lowest converged objective wins; ties go to the earliest grid index, so
  // the answer does not depend on execution order.
  long long winner = -1;
  for (long long k = 0; k < starts; ++k) {
    const auto& out = outcomes[static_cast<std::size_t>(k)];
    if (!out.eligible) continue;
    if (winner < 0 || out.objective < outcomes[static_cast<std::size_t>(winner)].objective)
      winner = k;
  }
  if (winner < 0) throw NoConvergence("no grid start converged to valid coefficients");

  const auto& best = outcomes[static_cast<std::size_t>(winner)];
  return FitReport{best.params.to_coefficients(), best.objective,
                   config.grid[static_cast<std::size_t>(winner)], runs.size(),
                   std::nullopt};
}

std::vector<TrainingRun> filter_by_ratio(std::span<const TrainingRun> runs,
                                         double max_tokens_per_param) {
  if (std::isnan(max_tokens_per_param) || !(max_tokens_per_param > 0))
    throw ValidationError("max_tokens_per_param must be > 0");
  std::vector<TrainingRun> kept;
  kept.reserve(runs.size());
  for (const auto& r : runs)
    if (r.tokens_per_param() <= max_tokens_per_param) kept.push_back(r);
  return kept;
}

}  // namespace scaleplan
