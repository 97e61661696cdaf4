#include <cmath>

#include <doctest.h>

#include "scaleplan/errors.hpp"
#include "scaleplan/root_finding.hpp"

using namespace scaleplan;

TEST_SUITE("root_finding") {

TEST_CASE("linear function") {
  const double root = solve_root([](double d) { return 2.0 - d; },
                                 [](double) { return -1.0; }, 1.0);
  CHECK(std::abs(root - 2.0) <= 1e-10);
}

TEST_CASE("root far above the hint") {
  const double root = solve_root([](double d) { return 1.0 - d / 3.5e12; },
                                 [](double) { return -1.0 / 3.5e12; }, 1.0);
  CHECK(std::abs(root / 3.5e12 - 1.0) < 1e-10);
}

TEST_CASE("root far below the hint") {
  const double root = solve_root([](double d) { return 1e-6 - d; },
                                 [](double) { return -1.0; }, 5e9,
                                 RootOptions{.residual_scale = 1e-6});
  CHECK(std::abs(root / 1e-6 - 1.0) < 1e-9);
}

TEST_CASE("exact hit at the hint returns immediately") {
  CHECK(solve_root([](double d) { return 2.0 - d; }, [](double) { return -1.0; }, 2.0) == 2.0);
}

TEST_CASE("no sign change raises NoSignChange") {
  // Decreasing but always positive.
  CHECK_THROWS_AS(solve_root([](double d) { return 1.0 / d; },
                             [](double d) { return -1.0 / (d * d); }, 1.0),
                  NoSignChange);
}

TEST_CASE("discontinuous step cannot satisfy the residual and raises NoConvergence") {
  CHECK_THROWS_AS(solve_root([](double d) { return d < 2.0 ? 1.0 : -1.0; },
                             [](double) { return 0.0; }, 1.0),
                  NoConvergence);
}

TEST_CASE("bad hints are rejected") {
  auto g = [](double d) { return 2.0 - d; };
  auto gp = [](double) { return -1.0; };
  CHECK_THROWS_AS(solve_root(g, gp, 0.0), NoSignChange);
  CHECK_THROWS_AS(solve_root(g, gp, -1.0), NoSignChange);
}

TEST_CASE("deterministic for identical inputs") {
  auto g = [](double d) { return std::pow(d, -0.3) - 1e-3; };
  auto gp = [](double d) { return -0.3 * std::pow(d, -1.3); };
  const double a = solve_root(g, gp, 1.0, RootOptions{.residual_scale = 1e-3});
  const double b = solve_root(g, gp, 1.0, RootOptions{.residual_scale = 1e-3});
  CHECK(a == b);
}

}  // TEST_SUITE
