#pragma once

#include <optional>
#include <string>

namespace minlen {

/// 15 significant digits; positional notation when |x| is in [1e-4, 1e6),
/// scientific otherwise. Trailing zeros are trimmed but one fractional digit
/// is kept, so 2 prints as "2.0".
std::string format_number(double x);

/// Empty string for a missing value (CSV convention).
std::string format_optional(const std::optional<double>& x);

}  // namespace minlen
