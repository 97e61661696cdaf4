#pragma once

#include <string_view>
#include <vector>

namespace scaleplan {

/// Coefficients of the parametric loss law
///   L(N, D) = E + A / N^alpha + B / D^beta
/// with N the parameter count, D the training-token count and loss in nats.
struct Coefficients {
  double A;      // params term weight, > 0
  double B;      // tokens term weight, > 0
  double E;      // irreducible loss, >= 0
  double alpha;  // in (0, 2)
  double beta;   // in (0, 2)

  Coefficients(double A, double B, double E, double alpha, double beta);

  /// Chinchilla fit. Uses the unrounded alpha/beta (0.336/0.283); the rounded
  /// two-digit values do not reproduce the reference configurations.
  static const Coefficients& chinchilla();

  /// Named lookup. Besides "chinchilla", ships the fits obtained on runs
  /// capped at 100/250/500 tokens per parameter and on the uncapped set:
  /// "ratio100", "ratio250", "ratio500", "alldata".
  static const Coefficients& preset(std::string_view name);
  static const std::vector<std::string_view>& preset_names();

  bool operator==(const Coefficients&) const = default;
};

}  // namespace scaleplan
