#pragma once

#include <complex>
#include <vector>

#include "minlen/spectrum.hpp"

namespace minlen {

/// Normalised momentum-space eigenfunction
///   phi(y) = N (1 - i s y) / (k(y)^2 + eps*^2),   s = sqrt(alpha) I1(eps*),
/// with the global phase fixed so that the constant coefficient is real and
/// positive, and b * int |phi|^2 dy = 1 (plain dp measure).
struct Eigenfunction {
  double eps_star = 0.0;
  double coeff_ratio_imag = 0.0;  ///< s, where A b / B = -i s
  double norm_const = 0.0;        ///< N
  double b = 1.0;
};

Eigenfunction build_eigenfunction(const BoundState& state, const SpectralProblem& problem);

std::complex<double> evaluate(const Eigenfunction& ef, const DeformationProfile& profile, double y);

struct DensitySample {
  double y;
  double density;  ///< |phi|^2
  double re;
  double im;
};

/// n >= 2 uniform samples on [-1, 1], endpoints included.
std::vector<DensitySample> sample_density(const Eigenfunction& ef, const DeformationProfile& profile, int n);

/// b * int |phi|^2 dy by adaptive quadrature.
double normalization_integral(const Eigenfunction& ef, const DeformationProfile& profile,
                              double tol = kDefaultQuadTolerance);

/// Pointwise residual of the dimensionless momentum-space equation
///   (k^2 + eps^2) phi(y) - gamma int phi + i sqrt(alpha) int (y - y') phi(y') dy'
/// with both moments of phi integrated directly from phi.
class SchrodingerResidual {
 public:
  SchrodingerResidual(const Eigenfunction& ef, const SpectralProblem& problem);
  std::complex<double> operator()(double y) const;

 private:
  Eigenfunction ef_;
  SpectralProblem problem_;
  std::complex<double> moment0_;  ///< int phi dy
  std::complex<double> moment1_;  ///< int y phi dy
};

}  // namespace minlen
