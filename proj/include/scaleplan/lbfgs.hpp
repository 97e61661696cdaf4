#pragma once

#include <functional>
#include <span>
#include <vector>

namespace scaleplan {

struct LbfgsOptions {
  int memory = 10;                    // stored (s, y) pairs for the two-loop recursion
  int max_iterations = 500;
  double gradient_tolerance = 1e-9;   // infinity norm
  double sufficient_decrease = 1e-4;  // Armijo constant
  double backtrack = 0.5;
  int max_line_search_steps = 60;
};

struct LbfgsResult {
  std::vector<double> x;
  double value = 0;
  double gradient_inf_norm = 0;
  int iterations = 0;
  bool converged = false;  // gradient tolerance met within the iteration cap
};

/// Writes the gradient at x into grad (same length as x) and returns the value.
using ObjectiveFn =
    std::function<double(std::span<const double> x, std::span<double> grad)>;

/// Limited-memory BFGS with two-loop recursion and a backtracking Armijo line
/// search. Deterministic given identical inputs.
LbfgsResult lbfgs_minimize(const ObjectiveFn& f, std::vector<double> x0,
                           const LbfgsOptions& options = {});

}  // namespace scaleplan
