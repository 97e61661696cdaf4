// Benchmark comparing the serial reference paths against the OpenMP-parallel
// ones for the two data-parallel kernels: sweep cells and fit grid starts.
// Outputs are compared bitwise; a mismatch fails the run.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "scaleplan/fitting.hpp"
#include "scaleplan/sweep.hpp"
#include "support/synthetic.hpp"

using namespace scaleplan;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& body) {
  const auto start = Clock::now();
  body();
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

int main() {
  const Coefficients& c = Coefficients::chinchilla();
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both paths run serially\n");
#endif

  // Sweep kernel: 120 x 120 independent solves.
  std::vector<double> losses, demands;
  for (int i = 0; i < 120; ++i) {
    losses.push_back(loss_for_chinchilla_params(1e8 * std::pow(1e12 / 1e8, i / 119.0), c));
    demands.push_back(1e9 * std::pow(1e13 / 1e9, i / 119.0));
  }
  const ObjectiveBuilder builder = [](double d) { return TradeoffObjective::compute(d); };

  SweepResult serial_sweep, parallel_sweep;
  const double sweep_serial_ms =
      time_ms([&] { serial_sweep = sweep_ratios(losses, demands, builder, c, false); });
  const double sweep_parallel_ms =
      time_ms([&] { parallel_sweep = sweep_ratios(losses, demands, builder, c, true); });
  const bool sweep_match =
      std::memcmp(serial_sweep.cells.data(), parallel_sweep.cells.data(),
                  serial_sweep.cells.size() * sizeof(SweepCell)) == 0;
  std::printf("sweep 120x120   serial %8.1f ms   parallel %8.1f ms   speedup %.2fx   %s\n",
              sweep_serial_ms, sweep_parallel_ms, sweep_serial_ms / sweep_parallel_ms,
              sweep_match ? "bitwise equal" : "MISMATCH");

  // Fit kernel: 432 independent quasi-Newton starts on a 50-run log.
  const auto runs = scaleplan::testing::synthetic_runs(c, 50, 7777, 0.01);
  FitReport serial_fit = fit(runs, FitConfig{}, false);
  FitReport parallel_fit = serial_fit;
  const double fit_serial_ms = time_ms([&] { serial_fit = fit(runs, FitConfig{}, false); });
  const double fit_parallel_ms =
      time_ms([&] { parallel_fit = fit(runs, FitConfig{}, true); });
  const bool fit_match = serial_fit.coefficients == parallel_fit.coefficients &&
                         serial_fit.objective_value == parallel_fit.objective_value;
  std::printf("fit 432 starts  serial %8.1f ms   parallel %8.1f ms   speedup %.2fx   %s\n",
              fit_serial_ms, fit_parallel_ms, fit_serial_ms / fit_parallel_ms,
              fit_match ? "bitwise equal" : "MISMATCH");

  return sweep_match && fit_match ? 0 : 1;
}
