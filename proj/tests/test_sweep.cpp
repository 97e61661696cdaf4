#include <cmath>
#include <cstring>

#include <doctest.h>

#include "scaleplan/cost_model.hpp"
#include "scaleplan/errors.hpp"
#include "scaleplan/sweep.hpp"

using namespace scaleplan;

namespace {

const Coefficients& kC = Coefficients::chinchilla();

TradeoffObjective compute_builder(double demand) {
  return TradeoffObjective::compute(demand);
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("known cells of the compute sweep") {
  const std::vector<double> losses = {loss_for_chinchilla_params(7e9, kC),
                                      loss_for_chinchilla_params(30e9, kC)};
  const std::vector<double> demands = {0.0, 1e11, 1e13};
  const SweepResult result = sweep_ratios(losses, demands, compute_builder, kC);

  REQUIRE(result.cells.size() == 6);
  for (const auto& cell : result.cells) CHECK(cell.valid);

  // Zero-demand column is exactly neutral.
  CHECK(result.at(0, 0).flops_ratio == 1.0);
  CHECK(result.at(0, 0).params_ratio == 1.0);
  CHECK(result.at(0, 0).tokens_ratio == 1.0);
  CHECK(result.at(1, 0).flops_ratio == 1.0);

  // 7B-quality row at 1e11 inference tokens: ~6/7 of the params on ~1.18x data.
  const SweepCell& seven = result.at(0, 1);
  CHECK(std::abs(seven.params_ratio - 6.0 / 7.0) < 0.02);
  CHECK(std::abs(seven.tokens_ratio - 1.18) < 0.02);

  // 30B-quality row at 1e13 tokens: ~28% fewer FLOPs with a ~13.6B model.
  const SweepCell& thirty = result.at(1, 2);
  CHECK(std::abs(thirty.flops_ratio - 0.72) < 0.02);
  CHECK(std::abs(thirty.params_ratio * 30e9 - 13.6e9) / 13.6e9 < 0.03);
}

TEST_CASE("ratio bounds hold across a grid") {
  std::vector<double> losses;
  for (double size : log_spaced(1e8, 1e12, 12))
    losses.push_back(loss_for_chinchilla_params(size, kC));
  const std::vector<double> demands = log_spaced(1e9, 1e13, 12);
  const SweepResult result = sweep_ratios(losses, demands, compute_builder, kC);
  for (const auto& cell : result.cells) {
    REQUIRE(cell.valid);
    CHECK(cell.flops_ratio <= 1.0);
    CHECK(cell.flops_ratio > 0.0);
    CHECK(cell.params_ratio <= 1.0);
    CHECK(cell.tokens_ratio >= 1.0);
  }
}

TEST_CASE("failing cells are marked invalid, not fatal") {
  const std::vector<double> losses = {1.2, 2.0};  // first is below the asymptote
  const std::vector<double> demands = {0.0, 1e12};
  const SweepResult result = sweep_ratios(losses, demands, compute_builder, kC);
  CHECK_FALSE(result.at(0, 0).valid);
  CHECK_FALSE(result.at(0, 1).valid);
  CHECK(result.at(1, 0).valid);
  CHECK(result.at(1, 1).valid);
  CHECK(std::isnan(result.at(0, 1).flops_ratio));
}

TEST_CASE("serial and parallel sweeps are bitwise identical") {
  std::vector<double> losses;
  for (double size : log_spaced(3e8, 3e11, 9))
    losses.push_back(loss_for_chinchilla_params(size, kC));
  const std::vector<double> demands = log_spaced(1e9, 1e13, 9);
  const SweepResult serial = sweep_ratios(losses, demands, compute_builder, kC, false);
  const SweepResult parallel = sweep_ratios(losses, demands, compute_builder, kC, true);
  REQUIRE(serial.cells.size() == parallel.cells.size());
  CHECK(std::memcmp(serial.cells.data(), parallel.cells.data(),
                    serial.cells.size() * sizeof(SweepCell)) == 0);
}

TEST_CASE("cost-objective sweep behaves like the compute one") {
  const HardwareProfile& hw = HardwareProfile::a100_default();
  const MfuProfile& mfu = MfuProfile::default_profile();
  const ObjectiveBuilder cost_builder = [&](double requests) {
    return cost_objective(hw, mfu, InferenceDemand::of_requests(requests));
  };
  const std::vector<double> losses = {loss_for_chinchilla_params(30e9, kC)};
  const std::vector<double> demands = {0.0, 1.5e9, 17.5e9};
  const SweepResult result = sweep_ratios(losses, demands, cost_builder, kC);
  CHECK(result.at(0, 0).flops_ratio == 1.0);
  CHECK(result.at(0, 1).flops_ratio < 1.0);
  CHECK(result.at(0, 2).flops_ratio < result.at(0, 1).flops_ratio);
  CHECK(result.at(0, 2).params_ratio < result.at(0, 1).params_ratio);
}

TEST_CASE("empty grids are rejected") {
  CHECK_THROWS_AS(sweep_ratios({}, {1.0}, compute_builder, kC), ValidationError);
  CHECK_THROWS_AS(sweep_ratios({2.0}, {}, compute_builder, kC), ValidationError);
}

}  // TEST_SUITE
