#pragma once

#include <string>
#include <string_view>

namespace scaleplan::si {

/// Parses "250", "3.5e12", "70B", "4.26T". Suffixes K/M/B/T scale by
/// 1e3/1e6/1e9/1e12, case-insensitive. Throws ValidationError on anything else.
double parse_quantity(std::string_view text);

/// 3 significant figures, trailing zeros trimmed: 1.89, 46.8, 0.091.
std::string format_sig3(double value);

/// Counts with an SI suffix: 633M, 41.6B, 4.26T. Falls back to scientific
/// notation outside the suffix range.
std::string format_count(double value);

/// "$" + format_count: $3.77K, $51.5M.
std::string format_usd(double value);

/// 3-significant-figure scientific notation: 2.81e24.
std::string format_sci3(double value);

/// Fraction as a percentage: 0.12 -> "12%", 0.091 -> "9.1%".
std::string format_percent(double fraction);

}  // namespace scaleplan::si
