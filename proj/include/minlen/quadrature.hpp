#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "minlen/deformation.hpp"

namespace minlen {

inline constexpr double kDefaultQuadTolerance = 1e-10;
inline constexpr int kMaxPanelDepth = 60;

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  /// False when a panel hit the depth cap; `value` is then the best estimate.
  bool converged = true;
};

/// 2 * integral of f over [0, 1] for an even integrand f.
///
/// Adaptive Gauss-Kronrod (7/15) with recursive bisection. [0, 1] is first
/// split at `breakpoints` (values outside (0, 1) are ignored); each panel must
/// satisfy |K15 - G7| <= tol * width / 2, or the roundoff floor of the panel.
/// Throws QuadratureError::NonFiniteIntegrand if f is not finite at a node.
QuadratureResult integrate_even(const std::function<double(double)>& f, double tol,
                                std::span<const double> breakpoints = {});

struct IntegralPair {
  double eps = 0.0;
  double i1 = 0.0;  ///< int_{-1}^{1} dy / (k^2 + eps^2)
  double i2 = 0.0;  ///< int_{-1}^{1} y^2 dy / (k^2 + eps^2)
  double err1 = 0.0;
  double err2 = 0.0;
  std::size_t evaluations = 0;
};

/// Both integrals by quadrature. eps must be positive (I1 diverges at eps = 0).
IntegralPair compute_integrals(const DeformationProfile& profile, double eps,
                               double tol = kDefaultQuadTolerance);

/// I2(0) = int y^2 / k(y)^2 dy, with the y -> 0 value fixed at 1/k'(0)^2.
double compute_i2_zero(const DeformationProfile& profile, double tol = kDefaultQuadTolerance);

}  // namespace minlen
