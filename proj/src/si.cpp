#include "scaleplan/si.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "scaleplan/errors.hpp"

namespace scaleplan::si {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// "2.81e+24" -> "2.81e24", "1e-05" -> "1e-5"
std::string tidy_exponent(std::string s) {
  const auto e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mantissa = s.substr(0, e + 1);
  std::string exp = s.substr(e + 1);
  bool negative = false;
  if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
    negative = exp[0] == '-';
    exp.erase(0, 1);
  }
  while (exp.size() > 1 && exp[0] == '0') exp.erase(0, 1);
  return mantissa + (negative ? "-" : "") + exp;
}

std::string g3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return tidy_exponent(buf);
}

}  // namespace

double parse_quantity(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ValidationError("empty quantity");

  double scale = 1.0;
  std::string_view digits = s;
  switch (std::toupper(static_cast<unsigned char>(s.back()))) {
    case 'K': scale = 1e3; digits.remove_suffix(1); break;
    case 'M': scale = 1e6; digits.remove_suffix(1); break;
    case 'B': scale = 1e9; digits.remove_suffix(1); break;
    case 'T': scale = 1e12; digits.remove_suffix(1); break;
    default: break;
  }
  if (digits.empty()) throw ValidationError("'" + std::string(text) + "' is not a number");

  double value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw ValidationError("'" + std::string(text) + "' is not a number");
  if (!std::isfinite(value))
    throw ValidationError("'" + std::string(text) + "' is not finite");
  return value * scale;
}

std::string format_sig3(double value) { return g3(value); }

std::string format_count(double value) {
  if (!std::isfinite(value)) return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
  const double a = std::abs(value);
  if (a == 0) return "0";
  if (a >= 1e15 || a < 1e-3) return format_sci3(value);

  struct Tier {
    double scale;
    const char* suffix;
  };
  static const Tier tiers[] = {{1e12, "T"}, {1e9, "B"}, {1e6, "M"}, {1e3, "K"}};

  if (a < 1e3) {
    std::string s = g3(value);
    // 999.6 rounds into the next tier at 3 significant figures.
    if (s.find('e') == std::string::npos) return s;
    return g3(value / 1e3) + "K";
  }
  for (std::size_t i = 0; i < std::size(tiers); ++i) {
    if (a < tiers[i].scale) continue;
    std::string s = g3(value / tiers[i].scale);
    if (s.find('e') != std::string::npos) {
      if (i == 0) break;  // carries past T; fall back to scientific
      return g3(value / tiers[i - 1].scale) + tiers[i - 1].suffix;
    }
    return s + tiers[i].suffix;
  }
  return format_sci3(value);
}

std::string format_usd(double value) {
  if (value < 0) return "-$" + format_count(-value);
  return "$" + format_count(value);
}

std::string format_sci3(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", value);
  return tidy_exponent(buf);
}

std::string format_percent(double fraction) { return g3(fraction * 100.0) + "%"; }

}  // namespace scaleplan::si
