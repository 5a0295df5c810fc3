#include "minlen/wavefunction.hpp"

#include <array>
#include <cmath>

#include "minlen/errors.hpp"

namespace minlen {

namespace {

double lorentz(const DeformationProfile& profile, double eps, double y) {
  const double k = profile.k_regular(y);
  return 1.0 / (k * k + eps * eps);
}

std::array<double, 2> peak_cuts(double eps) { return {eps, std::min(1.0, 10.0 * eps)}; }

}  // namespace

Eigenfunction build_eigenfunction(const BoundState& state, const SpectralProblem& problem) {
  if (!(state.residual < 1e-9)) throw DomainError("bound state is not solved to residual < 1e-9");
  Eigenfunction ef;
  ef.eps_star = state.eps_star;
  ef.b = problem.profile.b();
  ef.coeff_ratio_imag = std::sqrt(problem.couplings.alpha) * state.i1_at_root;

  const double eps = ef.eps_star;
  const double s2 = ef.coeff_ratio_imag * ef.coeff_ratio_imag;
  const auto cuts = peak_cuts(eps);
  const auto r = integrate_even(
      [&](double y) {
        const double l = lorentz(problem.profile, eps, y);
        return (1.0 + s2 * y * y) * l * l;
      },
      problem.tol_quad, cuts);
  if (!r.converged) {
    throw QuadratureError(QuadratureError::Kind::ToleranceNotReached, "normalisation integral", r.value);
  }
  ef.norm_const = 1.0 / std::sqrt(ef.b * r.value);
  return ef;
}

std::complex<double> evaluate(const Eigenfunction& ef, const DeformationProfile& profile, double y) {
  const double l = ef.norm_const * lorentz(profile, ef.eps_star, y);
  return {l, -ef.coeff_ratio_imag * y * l};
}

std::vector<DensitySample> sample_density(const Eigenfunction& ef, const DeformationProfile& profile, int n) {
  if (n < 2) throw DomainError("at least two samples are required");
  std::vector<DensitySample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    // integer numerator keeps the grid exactly antisymmetric
    const double y = static_cast<double>(2 * i - (n - 1)) / (n - 1);
    const auto phi = evaluate(ef, profile, y);
    out.push_back({y, std::norm(phi), phi.real(), phi.imag()});
  }
  return out;
}

double normalization_integral(const Eigenfunction& ef, const DeformationProfile& profile, double tol) {
  const auto r = integrate_even([&](double y) { return std::norm(evaluate(ef, profile, y)); }, tol,
                                peak_cuts(ef.eps_star));
  return ef.b * r.value;
}

SchrodingerResidual::SchrodingerResidual(const Eigenfunction& ef, const SpectralProblem& problem)
    : ef_(ef), problem_(problem) {
  const auto cuts = peak_cuts(ef.eps_star);
  const auto& profile = problem.profile;
  // Re phi is even and Im phi is odd, so only the even parts survive.
  const double re0 =
      integrate_even([&](double y) { return evaluate(ef_, profile, y).real(); }, problem.tol_quad, cuts).value;
  const double im1 =
      integrate_even([&](double y) { return y * evaluate(ef_, profile, y).imag(); }, problem.tol_quad, cuts)
          .value;
  moment0_ = {re0, 0.0};
  moment1_ = {0.0, im1};
}

std::complex<double> SchrodingerResidual::operator()(double y) const {
  const double k = problem_.profile.k_regular(y);
  const double eps = ef_.eps_star;
  const std::complex<double> i_sqrt_alpha{0.0, std::sqrt(problem_.couplings.alpha)};
  return (k * k + eps * eps) * evaluate(ef_, problem_.profile, y) - problem_.couplings.gamma * moment0_ +
         i_sqrt_alpha * (y * moment0_ - moment1_);
}

}  // namespace minlen
