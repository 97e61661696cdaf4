#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "scaleplan/fitting.hpp"
#include "scaleplan/scaling_law.hpp"

namespace scaleplan::testing {

/// Synthetic run logs drawn from a known coefficient set: sizes log-uniform in
/// ~3e7..3e10 params, ratios log-uniform in 10..1000 tokens/param, optional
/// Gaussian noise on ln(loss).
inline std::vector<TrainingRun> synthetic_runs(const Coefficients& c, int count,
                                               std::uint64_t seed,
                                               double log_noise_sigma = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> size_exp(7.5, 10.5);
  std::uniform_real_distribution<double> ratio_exp(1.0, 3.0);
  std::normal_distribution<double> noise(0.0, 1.0);

  std::vector<TrainingRun> runs;
  runs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double params = std::pow(10.0, size_exp(rng));
    const double tokens = params * std::pow(10.0, ratio_exp(rng));
    double run_loss = loss(ModelConfig(params, tokens), c);
    if (log_noise_sigma > 0) run_loss *= std::exp(log_noise_sigma * noise(rng));
    runs.emplace_back(params, tokens, run_loss);
  }
  return runs;
}

/// Runs pinned at given tokens-per-param ratios (one size), plus a second size
/// so fits stay feasible.
inline std::vector<TrainingRun> runs_at_ratios(const Coefficients& c,
                                               const std::vector<double>& ratios,
                                               double params = 1e9) {
  std::vector<TrainingRun> runs;
  runs.reserve(ratios.size() * 2);
  for (double size : {params, params * 4}) {
    for (double ratio : ratios) {
      const double tokens = size * ratio;
      runs.emplace_back(size, tokens, loss(ModelConfig(size, tokens), c));
    }
  }
  return runs;
}

}  // namespace scaleplan::testing
