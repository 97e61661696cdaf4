#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "scaleplan/optimizer.hpp"

namespace scaleplan {

struct SweepCell {
  double loss = 0;
  double demand = 0;
  bool valid = false;
  double flops_ratio = std::numeric_limits<double>::quiet_NaN();
  double params_ratio = std::numeric_limits<double>::quiet_NaN();
  double tokens_ratio = std::numeric_limits<double>::quiet_NaN();
  double optimal_params = std::numeric_limits<double>::quiet_NaN();
  double optimal_tokens = std::numeric_limits<double>::quiet_NaN();
  double baseline_params = std::numeric_limits<double>::quiet_NaN();
  double baseline_tokens = std::numeric_limits<double>::quiet_NaN();
};

struct SweepResult {
  std::vector<double> losses;   // row keys
  std::vector<double> demands;  // column keys
  std::vector<SweepCell> cells; // row-major, losses.size() * demands.size()

  const SweepCell& at(std::size_t row, std::size_t col) const {
    return cells[row * demands.size() + col];
  }
};

/// Maps a demand value (inference tokens, requests, ...) to objective weights.
/// Must be safe to call concurrently.
using ObjectiveBuilder = std::function<TradeoffObjective(double demand)>;

/// One independent solve per (loss, demand) cell. A cell whose solve fails is
/// marked invalid instead of aborting the sweep. The parallel path only
/// partitions cells across OpenMP threads; per-cell arithmetic is identical,
/// so serial and parallel sweeps match bitwise.
SweepResult sweep_ratios(const std::vector<double>& losses,
                         const std::vector<double>& demands,
                         const ObjectiveBuilder& objective_of_demand,
                         const Coefficients& c, bool parallel = true);

}  // namespace scaleplan
