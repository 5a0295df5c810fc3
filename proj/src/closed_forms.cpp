#include "minlen/closed_forms.hpp"

#include <cmath>
#include <numbers>

#include "minlen/errors.hpp"
#include "minlen/quadrature.hpp"

namespace minlen {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

// acos(eps)/sqrt(1-eps^2) for eps < 1, acosh(eps)/sqrt(eps^2-1) for eps > 1.
double power32_ratio(double eps) {
  if (eps < 1.0) return std::acos(eps) / std::sqrt((1.0 - eps) * (1.0 + eps));
  return std::acosh(eps) / std::sqrt((eps - 1.0) * (eps + 1.0));
}

bool near(double eps, double singular) { return std::abs(eps - singular) < kRemovableWindow; }

void require_positive(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps must be positive and finite");
}

}  // namespace

namespace detail {

double dilog_series(double x) {
  if (x == 0.0) return 0.0;
  double term = x;
  double sum = 0.0;
  for (int n = 1; n < 200; ++n) {
    const double add = term / (static_cast<double>(n) * n);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    term *= x;
  }
  return sum;
}

double dilog_reflection(double x) {
  if (x == 1.0) return kPi2 / 6.0;
  return kPi2 / 6.0 - std::log(x) * std::log1p(-x) - dilog(1.0 - x);
}

double dilog_landen(double x) {
  const double l = std::log1p(-x);
  return -dilog(x / (x - 1.0)) - 0.5 * l * l;
}

double dilog_inversion(double x) {
  const double l = std::log(-x);
  return -kPi2 / 6.0 - 0.5 * l * l - dilog(1.0 / x);
}

}  // namespace detail

double dilog(double x) {
  if (std::isnan(x)) throw DomainError("dilog of NaN");
  if (x > 1.0) throw DomainError("dilog is complex for x > 1");
  if (x == 1.0) return kPi2 / 6.0;
  if (x == -1.0) return -kPi2 / 12.0;
  if (std::abs(x) <= 0.5) return detail::dilog_series(x);
  if (x > 0.5) return detail::dilog_reflection(x);
  if (x >= -1.0) return detail::dilog_landen(x);
  return detail::dilog_inversion(x);
}

double closed_i1(ClosedFormId id, double eps) {
  require_positive(eps);
  switch (id) {
    case ClosedFormId::Cutoff:
      return 2.0 * std::atan(1.0 / eps) / eps;
    case ClosedFormId::Power32: {
      if (near(eps, 1.0)) return compute_integrals(make_builtin(id), eps).i1;
      const double one_minus = (1.0 - eps) * (1.0 + eps);
      return 2.0 / one_minus * (power32_ratio(eps) / eps - 1.0);
    }
    case ClosedFormId::Kempf:
      return 2.0 * kPi / (eps * (kPi * eps + 2.0));
  }
  throw DomainError("unknown closed form");
}

double closed_i2(ClosedFormId id, double eps) {
  require_positive(eps);
  switch (id) {
    case ClosedFormId::Cutoff:
      return 2.0 - 2.0 * eps * std::atan(1.0 / eps);
    case ClosedFormId::Power32: {
      if (near(eps, 1.0)) return compute_integrals(make_builtin(id), eps).i2;
      const double one_minus = (1.0 - eps) * (1.0 + eps);
      return (2.0 * (eps * eps + 2.0) / 3.0 - 2.0 * eps * power32_ratio(eps)) / (one_minus * one_minus);
    }
    case ClosedFormId::Kempf: {
      if (near(eps, 2.0 / kPi)) return compute_integrals(make_builtin(id), eps).i2;
      const double pe = kPi * eps;
      const double u = (pe - 2.0) / (pe + 2.0);
      const double numerator = eps * kPi2 * kPi - 2.0 * kPi2 - 24.0 * dilog(u);
      return 2.0 / 3.0 * numerator / (pe * (pe * pe - 4.0));
    }
  }
  throw DomainError("unknown closed form");
}

double closed_i2_zero(ClosedFormId id) {
  switch (id) {
    case ClosedFormId::Cutoff: return 2.0;
    case ClosedFormId::Power32: return 4.0 / 3.0;
    case ClosedFormId::Kempf: return 4.0 * std::numbers::ln2 - kPi2 / 6.0;
  }
  throw DomainError("unknown closed form");
}

double kempf_i2_as_printed(double eps) {
  require_positive(eps);
  const double pe = kPi * eps;
  if (pe == 2.0) throw DomainError("printed Kempf I2 is singular at eps = 2/pi");
  const double u = (pe - 2.0) / (pe + 2.0);
  double combination = 0.0;  // Li2(1/u) - Li2(u)
  if (u < 0.0) {
    const double l = std::log(-u);
    combination = -kPi2 / 6.0 - 0.5 * l * l - 2.0 * dilog(u);
  } else {
    const double l = std::log(u);
    combination = kPi2 / 3.0 - 0.5 * l * l - 2.0 * dilog(u);
  }
  return 2.0 / 3.0 * (eps * kPi2 * kPi + 12.0 * combination) / (pe * (pe * pe - 4.0));
}

}  // namespace minlen
