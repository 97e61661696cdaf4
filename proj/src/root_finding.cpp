#include "scaleplan/root_finding.hpp"

#include <cmath>

#include "scaleplan/errors.hpp"

namespace scaleplan {

namespace {
const double kExpandStep = std::log(4.0);  // bracket growth per expansion
}

double solve_root(const std::function<double(double)>& g,
                  const std::function<double(double)>& g_prime,
                  double hint, const RootOptions& opt) {
  if (!std::isfinite(hint) || !(hint > 0))
    throw NoSignChange("root hint must be finite and > 0");

  const double tol = opt.residual_tol * opt.residual_scale;

  double x = std::log(hint);
  double gx = g(hint);
  if (!std::isfinite(gx)) throw NoSignChange("g(hint) is not finite");
  if (gx == 0.0) return hint;

  // Bracket the root. g is strictly decreasing, so a positive value means the
  // root lies above the current point and a negative one below.
  double xlo;  // g > 0
  double xhi;  // g < 0
  if (gx > 0) {
    xlo = x;
    xhi = x;
    for (int k = 0;; ++k) {
      if (k >= opt.max_expansions)
        throw NoSignChange("no sign change above the hint after geometric expansion");
      xlo = xhi;
      xhi += kExpandStep;
      const double gv = g(std::exp(xhi));
      if (!std::isfinite(gv)) throw NoSignChange("g became non-finite during bracketing");
      if (gv == 0.0) return std::exp(xhi);
      if (gv < 0) break;
    }
  } else {
    xhi = x;
    xlo = x;
    for (int k = 0;; ++k) {
      if (k >= opt.max_expansions)
        throw NoSignChange("no sign change below the hint after geometric expansion");
      xhi = xlo;
      xlo -= kExpandStep;
      const double gv = g(std::exp(xlo));
      if (!std::isfinite(gv)) throw NoSignChange("g became non-finite during bracketing");
      if (gv == 0.0) return std::exp(xlo);
      if (gv > 0) break;
    }
  }

  // Safeguarded Newton on x = ln D; out-of-bracket or degenerate steps bisect.
  double xc = 0.5 * (xlo + xhi);
  for (int it = 0; it < opt.max_iterations; ++it) {
    const double d = std::exp(xc);
    const double gc = g(d);
    if (gc > 0) {
      xlo = xc;
    } else if (gc < 0) {
      xhi = xc;
    } else {
      return d;
    }
    if (std::abs(gc) <= tol && xhi - xlo <= opt.bracket_tol) return d;

    const double slope_x = g_prime(d) * d;  // d/dx of g(e^x)
    double xn = xc - gc / slope_x;
    if (!std::isfinite(xn) || xn <= xlo || xn >= xhi) xn = 0.5 * (xlo + xhi);
    if (xn == xc) xn = 0.5 * (xlo + xhi);
    xc = xn;
  }
  throw NoConvergence("root finder hit the iteration cap");
}

}  // namespace scaleplan
