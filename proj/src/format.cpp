#include "minlen/format.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace minlen {

namespace {

constexpr int kSignificant = 15;

void trim_fraction(std::string& s) {
  const auto dot = s.find('.');
  if (dot == std::string::npos) {
    s += ".0";
    return;
  }
  auto last = s.find_last_not_of('0');
  if (last == dot) ++last;  // keep one digit after the point
  s.erase(last + 1);
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0.0";

  char buf[64];
  const double ax = std::abs(x);
  if (ax >= 1e-4 && ax < 1e6) {
    std::snprintf(buf, sizeof buf, "%.*e", kSignificant - 1, x);
    // decimal exponent after rounding to 15 digits
    const int exponent = std::atoi(std::strchr(buf, 'e') + 1);
    const int decimals = std::max(0, kSignificant - 1 - exponent);
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    std::string s(buf);
    trim_fraction(s);
    return s;
  }
  std::snprintf(buf, sizeof buf, "%.*e", kSignificant - 1, x);
  std::string s(buf);
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  trim_fraction(mantissa);
  return mantissa + s.substr(e);
}

std::string format_optional(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

}  // namespace minlen
