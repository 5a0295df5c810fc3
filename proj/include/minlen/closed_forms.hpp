#pragma once

#include "minlen/deformation.hpp"

namespace minlen {

/// Real dilogarithm Li2(x) = sum x^n / n^2 for x <= 1. Throws DomainError for x > 1.
double dilog(double x);

namespace detail {
// Individual branches, exposed so their overlap can be tested.
double dilog_series(double x);      // |x| <= 1/2
double dilog_reflection(double x);  // (1/2, 1]
double dilog_landen(double x);      // [-1, -1/2)
double dilog_inversion(double x);   // x < -1
}  // namespace detail

/// Half-width of the window around a removable singular point (power32 at
/// eps = 1, kempf I2 at eps = 2/pi) inside which quadrature is used instead.
inline constexpr double kRemovableWindow = 1e-4;

/// Analytic I1(eps) for the built-in deformations; eps > 0.
double closed_i1(ClosedFormId id, double eps);

/// Analytic I2(eps) for the built-in deformations; eps > 0.
double closed_i2(ClosedFormId id, double eps);

/// Exact I2(0): 2, 4/3 and 4 ln 2 - pi^2/6.
double closed_i2_zero(ClosedFormId id);

/// The Kempf I2 expression in its originally printed dilogarithm form,
/// Li2(u) and Li2(1/u) with u = (pi eps - 2)/(pi eps + 2), realised with the
/// inversion identity for eps < 2/pi and the real part for eps > 2/pi.
/// Display only: it does not reproduce the integral (see tests).
double kempf_i2_as_printed(double eps);

}  // namespace minlen
