#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "minlen/deformation.hpp"
#include "minlen/quadrature.hpp"

namespace minlen {

inline constexpr double kScanLow = 1e-6;
inline constexpr double kScanHigh = 1e4;
inline constexpr int kScanPoints = 400;
inline constexpr int kScanExpansions = 2;

struct SpectralProblem {
  DeformationProfile profile;
  DimensionlessCouplings couplings;
  double tol_root = 1e-12;  ///< relative width at which refinement stops
  double tol_quad = kDefaultQuadTolerance;
  /// Use quadrature even when the profile has closed forms.
  bool force_quadrature = false;
  /// When set, solve_bound_state also reports the physical energy.
  std::optional<PhysicalParams> physical;
};

struct SpectralIntegrals {
  double i1 = 0.0;
  double i2 = 0.0;
};

/// I1, I2 at eps from closed forms when available, quadrature otherwise.
SpectralIntegrals spectral_integrals(const SpectralProblem& problem, double eps);

/// alpha I1 I2 + gamma I1 at eps > 0.
double spectral_lhs(const SpectralProblem& problem, double eps);

/// I2(0) by the same closed-form/quadrature selection.
double i2_zero(const SpectralProblem& problem);

struct ExistenceReport {
  bool exists = false;
  double gamma0 = 0.0;  ///< alpha * I2(0)
  double i2_zero = 0.0;
};

/// A bound state exists iff gamma > -alpha I2(0) and (alpha, gamma) != (0, <= 0).
/// gamma = -gamma0 exactly is reported as not existing.
ExistenceReport exists_bound_state(const SpectralProblem& problem);

struct BoundState {
  double eps_star = 0.0;
  std::optional<double> energy;
  double i1_at_root = 0.0;
  double i2_at_root = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;
  /// Further roots found by the scan; non-empty only with the MultipleRoots warning.
  std::vector<double> extra_roots;
  bool multiple_roots() const noexcept { return !extra_roots.empty(); }
};

/// Grid points (lo, hi) of each sign change of spectral_lhs - 1 on a
/// log-spaced grid of `points` values over [lo, hi].
std::vector<std::pair<double, double>> scan_sign_changes(const SpectralProblem& problem, double lo,
                                                         double hi, int points);

/// Root of spectral_lhs(eps) = 1: log-spaced bracket scan over [1e-6, 1e4]
/// (widened by a decade per side, at most twice), then bisection with secant
/// acceleration. Throws NoBracketFound when the scan sees no sign change.
BoundState solve_bound_state(const SpectralProblem& problem);

/// gamma either as a fixed value or as a multiple of gamma0(alpha).
struct GammaSpec {
  double value = 0.0;
  bool relative_to_threshold = false;

  double at(double alpha, double i2_zero) const {
    return relative_to_threshold ? value * alpha * i2_zero : value;
  }
};

struct SweepPoint {
  double alpha = 0.0;
  double gamma = 0.0;
  std::optional<double> eps_star;
  std::string error;  ///< why eps_star is empty, if it is
};

/// One root per alpha in grid order; failed points carry an empty eps_star.
std::vector<SweepPoint> sweep_alpha(const SpectralProblem& base, GammaSpec gamma,
                                    std::span<const double> alphas);

struct LimitPoint {
  double b = 0.0;
  double gamma = 0.0;
  std::optional<double> eps_star;
  std::optional<double> energy;
  std::string error;
};

/// Re-solves the problem for each momentum bound b with physical couplings held
/// fixed: alpha is b-independent, gamma = lambda m / (b pi hbar).
std::vector<LimitPoint> sweep_b_physical(const PhysicalParams& params, const DeformationProfile& profile,
                                         std::span<const double> b_values,
                                         double tol_quad = kDefaultQuadTolerance);

}  // namespace minlen
