#pragma once

#include <functional>

namespace scaleplan {

struct RootOptions {
  double residual_scale = 1.0;  // converged when |g| <= residual_tol * residual_scale
  double residual_tol = 1e-10;
  double bracket_tol = 1e-12;   // relative width of the final bracket
  int max_iterations = 200;
  int max_expansions = 200;     // geometric bracket growth, x4 per step
};

/// Root of a strictly decreasing g with exactly one positive root.
/// Newton iteration on x = ln D keeps steps well scaled when the root may sit
/// anywhere across many decades; steps that leave the bracket fall back to
/// bisection. Deterministic for identical inputs.
///
/// Throws NoSignChange when bracketing fails and NoConvergence when the
/// iteration cap is reached before both tolerances hold.
double solve_root(const std::function<double(double)>& g,
                  const std::function<double(double)>& g_prime,
                  double hint, const RootOptions& options = {});

}  // namespace scaleplan
