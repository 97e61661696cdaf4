#include "scaleplan/coefficients.hpp"

#include <cmath>
#include <string>

#include "scaleplan/errors.hpp"

namespace scaleplan {

Coefficients::Coefficients(double A_, double B_, double E_, double alpha_, double beta_)
    : A(A_), B(B_), E(E_), alpha(alpha_), beta(beta_) {
  if (!std::isfinite(A) || !(A > 0)) throw ValidationError("coefficient A must be finite and > 0");
  if (!std::isfinite(B) || !(B > 0)) throw ValidationError("coefficient B must be finite and > 0");
  if (!std::isfinite(E) || !(E >= 0)) throw ValidationError("coefficient E must be finite and >= 0");
  if (!std::isfinite(alpha) || !(alpha > 0 && alpha < 2))
    throw ValidationError("coefficient alpha must be in (0, 2)");
  if (!std::isfinite(beta) || !(beta > 0 && beta < 2))
    throw ValidationError("coefficient beta must be in (0, 2)");
}

const Coefficients& Coefficients::chinchilla() {
  static const Coefficients c{406.4, 410.7, 1.69, 0.336, 0.283};
  return c;
}

namespace {

struct NamedPreset {
  std::string_view name;
  Coefficients coefficients;
};

const std::vector<NamedPreset>& presets() {
  static const std::vector<NamedPreset> all = {
      {"chinchilla", Coefficients::chinchilla()},
      // Fits on runs capped by tokens-per-parameter ratio; flatter curves as
      // longer-duration runs enter the data.
      {"ratio100", {7.199, 25.97, 0.17, 0.08, 0.13}},
      {"ratio250", {14.23, 39.54, 0.98, 0.13, 0.16}},
      {"ratio500", {17.07, 35.80, 0.95, 0.13, 0.16}},
      {"alldata", {33.66, 138.9, 1.45, 0.18, 0.24}},
  };
  return all;
}

}  // namespace

const Coefficients& Coefficients::preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p.coefficients;
  }
  std::string known;
  for (const auto& p : presets()) {
    if (!known.empty()) known += ", ";
    known += p.name;
  }
  throw ValidationError("unknown coefficient preset '" + std::string(name) +
                        "' (known: " + known + ")");
}

const std::vector<std::string_view>& Coefficients::preset_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> out;
    for (const auto& p : presets()) out.push_back(p.name);
    return out;
  }();
  return names;
}

}  // namespace scaleplan
