#include <cmath>
#include <random>

#include <doctest.h>

#include "scaleplan/cost_model.hpp"
#include "scaleplan/errors.hpp"

using namespace scaleplan;

namespace {

const Coefficients& kC = Coefficients::chinchilla();
const HardwareProfile& kHw = HardwareProfile::a100_default();
const MfuProfile& kMfu = MfuProfile::default_profile();

double rel_err(double got, double want) { return std::abs(got / want - 1.0); }

}  // namespace

TEST_SUITE("cost_model") {

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(HardwareProfile(0, 1, 1, 1), ValidationError);
  CHECK_THROWS_AS(MfuProfile(0.5, 0.5, 0.0), ValidationError);
  CHECK_THROWS_AS(MfuProfile(1.5, 0.5, 0.01), ValidationError);
  CHECK_THROWS_AS(InferenceDemand(-1, 70, 215), ValidationError);
  CHECK(kHw.train_price_per_hour == 1.50);
  CHECK(kHw.train_peak_ops == 3.12e14);
  CHECK(kHw.inf_price_per_hour == 1.10);
  CHECK(kHw.inf_peak_ops == 6.24e14);
  CHECK(kMfu.train_mfu == 0.5);
  CHECK(kMfu.input_mfu == 0.5);
  CHECK(kMfu.output_mfu == 0.01);
}

TEST_CASE("demand normalizes request shape and raw totals identically") {
  const InferenceDemand by_requests(2e9, 70, 215);
  const InferenceDemand by_totals = InferenceDemand::from_totals(140e9, 430e9);
  CHECK(by_requests.total_input() == by_totals.total_input());
  CHECK(by_requests.total_output() == by_totals.total_output());
  CHECK(by_requests.total_tokens() == by_requests.total_input() + by_requests.total_output());
  const InferenceDemand def = InferenceDemand::of_requests(3.0);
  CHECK(def.input_tokens_per_request == 70.0);
  CHECK(def.output_tokens_per_request == 215.0);
}

TEST_CASE("cost_per_op from the default device constants") {
  // 1.50 / (3600 * 3.12e14) and 1.10 / (3600 * 6.24e14).
  CHECK(std::abs(cost_per_op(1.50, 3.12e14) - 1.335e-18) < 1e-21);
  CHECK(std::abs(cost_per_op(1.10, 6.24e14) - 4.897e-19) < 1e-22);
  CHECK(cost_per_op(3600.0, 1.0) == 1.0);
}

TEST_CASE("cost objective weights") {
  SUBCASE("zero requests zero out the per-param weight") {
    const TradeoffObjective obj = cost_objective(kHw, kMfu, InferenceDemand::of_requests(0));
    CHECK(obj.per_param_weight == 0.0);
    CHECK(obj.rho == 0.0);
  }
  SUBCASE("one request at the default shape") {
    const TradeoffObjective obj = cost_objective(kHw, kMfu, InferenceDemand::of_requests(1));
    const double c_inf = cost_per_op(1.10, 6.24e14);
    // 70/0.5 + 215/0.01 = 21640 effective tokens per request.
    CHECK(rel_err(obj.per_param_weight, 2.0 * c_inf * 21640.0) < 1e-12);
    CHECK(rel_err(obj.per_token_weight, 1.602e-17) < 0.01);
  }
}

TEST_CASE("direct cost evaluation matches the reference totals loosely") {
  // The reference accounting is unspecified; totals agree within ~10-20%.
  const CostBreakdown seventy =
      evaluate_cost(ModelConfig(70e9, 4.26e12), kHw, kMfu, InferenceDemand::of_requests(35.1e9));
  CHECK(rel_err(seventy.total_cost, 5.15e7) < 0.20);

  const CostBreakdown thirty =
      evaluate_cost(ModelConfig(30e9, 1.56e12), kHw, kMfu, InferenceDemand::of_requests(17.5e9));
  CHECK(rel_err(thirty.total_cost, 1.08e7) < 0.20);

  const CostBreakdown idle =
      evaluate_cost(ModelConfig(1e9, 27.4e9), kHw, kMfu, InferenceDemand::of_requests(0));
  CHECK(idle.input_cost == 0.0);
  CHECK(idle.output_cost == 0.0);
  CHECK(idle.total_cost == idle.train_cost);
}

TEST_CASE("cost breakdown components sum exactly and grow with volume") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> exp10(6.0, 11.0);
  for (int i = 0; i < 50; ++i) {
    const ModelConfig cfg(std::pow(10.0, exp10(rng)), std::pow(10.0, exp10(rng) + 1));
    const double requests = std::pow(10.0, exp10(rng) - 2);
    const CostBreakdown base = evaluate_cost(cfg, kHw, kMfu, InferenceDemand(requests, 70, 215));
    CHECK(base.total_cost == base.train_cost + base.input_cost + base.output_cost);
    const CostBreakdown more_in = evaluate_cost(cfg, kHw, kMfu, InferenceDemand(requests, 90, 215));
    const CostBreakdown more_out = evaluate_cost(cfg, kHw, kMfu, InferenceDemand(requests, 70, 260));
    CHECK(more_in.input_cost >= base.input_cost);
    CHECK(more_in.output_cost == base.output_cost);
    CHECK(more_out.output_cost >= base.output_cost);
  }
}

TEST_CASE("cost-optimal plans reproduce the reference rows") {
  const double l30 = loss_for_chinchilla_params(30e9, kC);
  const CostPlan row4 = solve_cost_optimal(l30, kHw, kMfu, InferenceDemand::of_requests(17.5e9), kC);
  CHECK(rel_err(row4.plan.optimal.params, 8.58e9) < 0.10);
  CHECK(rel_err(row4.plan.optimal.train_tokens, 12.1e12) < 0.10);
  CHECK(std::abs(row4.savings_fraction - 0.58) <= 0.10);

  // Smaller demand scenario: ~16B on ~3.35T for ~17% savings.
  const CostPlan narrative = solve_cost_optimal(l30, kHw, kMfu, InferenceDemand::of_requests(1.5e9), kC);
  CHECK(rel_err(narrative.plan.optimal.params, 16e9) < 0.10);
  CHECK(rel_err(narrative.plan.optimal.train_tokens, 3.35e12) < 0.10);
  CHECK(std::abs(narrative.savings_fraction - 0.17) <= 0.05);
}

TEST_CASE("zero requests collapse to the Chinchilla baseline") {
  const CostPlan plan = solve_cost_optimal(2.0, kHw, kMfu, InferenceDemand::of_requests(0), kC);
  CHECK(plan.plan.optimal.params == plan.plan.baseline.params);
  CHECK(plan.savings_fraction == 0.0);
  CHECK(plan.total_cost == plan.baseline_total_cost);
}

TEST_CASE("savings are nonnegative, zero only without requests") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> pick_loss(1.8, 2.8);
  std::uniform_real_distribution<double> req_exp(6.0, 11.0);
  for (int i = 0; i < 25; ++i) {
    const double l = pick_loss(rng);
    const CostPlan with = solve_cost_optimal(
        l, kHw, kMfu, InferenceDemand::of_requests(std::pow(10.0, req_exp(rng))), kC);
    CHECK(with.savings_fraction > 0.0);
    const CostPlan without = solve_cost_optimal(l, kHw, kMfu, InferenceDemand::of_requests(0), kC);
    CHECK(without.savings_fraction == 0.0);
  }
}

TEST_CASE("rescaling both prices leaves the optimum unchanged") {
  const double l = loss_for_chinchilla_params(13e9, kC);
  const InferenceDemand demand = InferenceDemand::of_requests(3.51e9);
  const CostPlan base = solve_cost_optimal(l, kHw, kMfu, demand, kC);

  SUBCASE("power-of-two factor is bitwise exact") {
    const HardwareProfile scaled(kHw.train_price_per_hour * 4, kHw.train_peak_ops,
                                 kHw.inf_price_per_hour * 4, kHw.inf_peak_ops);
    const CostPlan same = solve_cost_optimal(l, scaled, kMfu, demand, kC);
    CHECK(same.plan.optimal.params == base.plan.optimal.params);
    CHECK(same.plan.optimal.train_tokens == base.plan.optimal.train_tokens);
    CHECK(same.total_cost == doctest::Approx(base.total_cost * 4).epsilon(1e-12));
  }
  SUBCASE("arbitrary factor agrees to 1e-9") {
    const HardwareProfile scaled(kHw.train_price_per_hour * 3.7, kHw.train_peak_ops,
                                 kHw.inf_price_per_hour * 3.7, kHw.inf_peak_ops);
    const CostPlan same = solve_cost_optimal(l, scaled, kMfu, demand, kC);
    CHECK(rel_err(same.plan.optimal.params, base.plan.optimal.params) < 1e-9);
    CHECK(rel_err(same.plan.optimal.train_tokens, base.plan.optimal.train_tokens) < 1e-9);
  }
}

TEST_CASE("uniform prices and unit utilization reduce to the compute problem") {
  // With C_tr = C_inf and all MFUs at 1, the cost weights are a constant
  // multiple of (6, 2*D_inf), so the optimum must match the compute solver.
  const HardwareProfile flat(3600.0, 1.0, 3600.0, 1.0);  // $1 per op on both fleets
  const MfuProfile unit(1.0, 1.0, 1.0);
  for (double l : {1.9, 2.13, 2.53}) {
    for (double d_inf : {1e11, 1e12, 1e13}) {
      const InferenceDemand demand = InferenceDemand::from_totals(d_inf / 2, d_inf / 2);
      const CostPlan cost = solve_cost_optimal(l, flat, unit, demand, kC);
      const OptimalPlan compute = solve_optimal(l, TradeoffObjective::compute(d_inf), kC);
      CHECK(rel_err(cost.plan.optimal.params, compute.optimal.params) < 1e-9);
      CHECK(rel_err(cost.plan.optimal.train_tokens, compute.optimal.train_tokens) < 1e-9);
    }
  }
}

}  // TEST_SUITE
