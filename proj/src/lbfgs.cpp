#include "scaleplan/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace scaleplan {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(std::span<const double> v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

LbfgsResult lbfgs_minimize(const ObjectiveFn& f, std::vector<double> x0,
                           const LbfgsOptions& opt) {
  const std::size_t n = x0.size();
  LbfgsResult result;
  result.x = std::move(x0);

  std::vector<double> grad(n), x_next(n), grad_next(n), direction(n);
  double fx = f(result.x, grad);

  // Ring buffers for the two-loop recursion.
  const int m = std::max(1, opt.memory);
  std::vector<std::vector<double>> s_hist(static_cast<std::size_t>(m), std::vector<double>(n));
  std::vector<std::vector<double>> y_hist(static_cast<std::size_t>(m), std::vector<double>(n));
  std::vector<double> rho_hist(static_cast<std::size_t>(m), 0.0);
  std::vector<double> alpha(static_cast<std::size_t>(m), 0.0);
  int stored = 0;
  int head = 0;  // slot of the most recent pair + 1 (mod m)
  double gamma = 1.0;

  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    result.gradient_inf_norm = inf_norm(grad);
    if (result.gradient_inf_norm <= opt.gradient_tolerance) {
      result.converged = true;
      break;
    }

    // Two-loop recursion: direction = -H * grad.
    for (std::size_t i = 0; i < n; ++i) direction[i] = -grad[i];
    for (int k = 0; k < stored; ++k) {
      const int idx = (head - 1 - k + 2 * m) % m;
      const auto& s = s_hist[static_cast<std::size_t>(idx)];
      const auto& y = y_hist[static_cast<std::size_t>(idx)];
      alpha[static_cast<std::size_t>(k)] = rho_hist[static_cast<std::size_t>(idx)] * dot(s, direction);
      for (std::size_t i = 0; i < n; ++i) direction[i] -= alpha[static_cast<std::size_t>(k)] * y[i];
    }
    for (std::size_t i = 0; i < n; ++i) direction[i] *= gamma;
    for (int k = stored - 1; k >= 0; --k) {
      const int idx = (head - 1 - k + 2 * m) % m;
      const auto& s = s_hist[static_cast<std::size_t>(idx)];
      const auto& y = y_hist[static_cast<std::size_t>(idx)];
      const double beta = rho_hist[static_cast<std::size_t>(idx)] * dot(y, direction);
      for (std::size_t i = 0; i < n; ++i)
        direction[i] += (alpha[static_cast<std::size_t>(k)] - beta) * s[i];
    }

    double descent = dot(grad, direction);
    if (!(descent < 0)) {
      // Stale curvature; restart from steepest descent.
      stored = 0;
      gamma = 1.0;
      for (std::size_t i = 0; i < n; ++i) direction[i] = -grad[i];
      descent = dot(grad, direction);
      if (!(descent < 0)) break;  // gradient is exactly zero
    }

    // Backtracking Armijo search.
    double step = 1.0;
    if (stored == 0) {
      // First step (or restart): scale to a unit-ish move.
      const double dnorm = std::sqrt(dot(direction, direction));
      if (dnorm > 1.0) step = 1.0 / dnorm;
    }
    double f_next = 0;
    bool accepted = false;
    for (int ls = 0; ls < opt.max_line_search_steps; ++ls) {
      for (std::size_t i = 0; i < n; ++i) x_next[i] = result.x[i] + step * direction[i];
      f_next = f(x_next, grad_next);
      if (std::isfinite(f_next) && f_next <= fx + opt.sufficient_decrease * step * descent) {
        accepted = true;
        break;
      }
      step *= opt.backtrack;
    }
    if (!accepted) {
      if (stored > 0) {
        // Give steepest descent one chance before giving up.
        stored = 0;
        gamma = 1.0;
        continue;
      }
      break;
    }

    auto& s = s_hist[static_cast<std::size_t>(head)];
    auto& y = y_hist[static_cast<std::size_t>(head)];
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_next[i] - result.x[i];
      y[i] = grad_next[i] - grad[i];
    }
    const double sy = dot(s, y);
    const double yy = dot(y, y);
    if (sy > 1e-12 * std::sqrt(dot(s, s)) * std::sqrt(yy)) {
      rho_hist[static_cast<std::size_t>(head)] = 1.0 / sy;
      gamma = sy / yy;
      head = (head + 1) % m;
      stored = std::min(stored + 1, m);
    }

    result.x.swap(x_next);
    grad.swap(grad_next);
    fx = f_next;
  }

  result.value = fx;
  result.gradient_inf_norm = inf_norm(grad);
  if (result.gradient_inf_norm <= opt.gradient_tolerance) result.converged = true;
  result.iterations = it;
  return result;
}

}  // namespace scaleplan
