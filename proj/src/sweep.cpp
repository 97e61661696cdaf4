#include "scaleplan/sweep.hpp"

#include "scaleplan/errors.hpp"

namespace scaleplan {

namespace {

SweepCell solve_cell(double target_loss, double demand,
                     const ObjectiveBuilder& objective_of_demand,
                     const Coefficients& c) {
  SweepCell cell;
  cell.loss = target_loss;
  cell.demand = demand;
  try {
    const OptimalPlan plan = solve_optimal(target_loss, objective_of_demand(demand), c);
    cell.valid = true;
    cell.flops_ratio = plan.objective_value / plan.baseline_objective;
    cell.params_ratio = plan.optimal.params / plan.baseline.params;
    cell.tokens_ratio = plan.optimal.train_tokens / plan.baseline.train_tokens;
    cell.optimal_params = plan.optimal.params;
    cell.optimal_tokens = plan.optimal.train_tokens;
    cell.baseline_params = plan.baseline.params;
    cell.baseline_tokens = plan.baseline.train_tokens;
  } catch (const Error&) {
    // Leave the cell invalid; one bad cell must not abort the sweep.
  }
  return cell;
}

}  // namespace

SweepResult sweep_ratios(const std::vector<double>& losses,
                         const std::vector<double>& demands,
                         const ObjectiveBuilder& objective_of_demand,
                         const Coefficients& c, bool parallel) {
  if (losses.empty() || demands.empty())
    throw ValidationError("sweep grids must be non-empty");

  SweepResult result;
  result.losses = losses;
  result.demands = demands;
  result.cells.resize(losses.size() * demands.size());

  const long long total = static_cast<long long>(result.cells.size());
  const long long cols = static_cast<long long>(demands.size());

#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (long long k = 0; k < total; ++k) {
    result.cells[static_cast<std::size_t>(k)] =
        solve_cell(losses[static_cast<std::size_t>(k / cols)],
                   demands[static_cast<std::size_t>(k % cols)], objective_of_demand, c);
  }
  return result;
}

}  // namespace scaleplan
