#include "minlen/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <string>
#include <vector>

#include "minlen/errors.hpp"

namespace minlen {

namespace {

// Kronrod abscissae on [0, 1); odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kRoundoffFactor = 50.0 * DBL_EPSILON;
constexpr std::size_t kMaxEvaluations = 4'000'000;

struct PanelEstimate {
  double kronrod;
  double error;
  double abs_integral;
};

double sample(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw QuadratureError(QuadratureError::Kind::NonFiniteIntegrand,
                          "integrand is not finite at y=" + std::to_string(x));
  }
  return v;
}

PanelEstimate gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = sample(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = sample(f, center - dx);
    const double f2 = sample(f, center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
}

struct Panel {
  double a;
  double b;
  int depth;
};

}  // namespace

QuadratureResult integrate_even(const std::function<double(double)>& f, double tol,
                                std::span<const double> breakpoints) {
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");

  std::vector<double> cuts{0.0, 1.0};
  for (double x : breakpoints) {
    if (x > 0.0 && x < 1.0) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Half-range target: the returned value is doubled.
  const double half_tol = 0.5 * tol;

  QuadratureResult result;
  // Panels are processed depth-first, left to right, so the summation order
  // depends only on the integrand.
  std::vector<Panel> stack;
  for (std::size_t i = cuts.size() - 1; i > 0; --i) stack.push_back({cuts[i - 1], cuts[i], 0});

  while (!stack.empty()) {
    const Panel panel = stack.back();
    stack.pop_back();
    const PanelEstimate est = gauss_kronrod(f, panel.a, panel.b);
    result.evaluations += 15;

    const double allowed = std::max(half_tol * (panel.b - panel.a), kRoundoffFactor * est.abs_integral);
    const bool at_cap = panel.depth >= kMaxPanelDepth || result.evaluations >= kMaxEvaluations;
    if (est.error <= allowed || at_cap) {
      if (est.error > allowed) result.converged = false;
      result.value += est.kronrod;
      result.error += est.error;
      continue;
    }
    const double mid = 0.5 * (panel.a + panel.b);
    stack.push_back({mid, panel.b, panel.depth + 1});
    stack.push_back({panel.a, mid, panel.depth + 1});
  }
  result.value *= 2.0;
  result.error *= 2.0;
  return result;
}

namespace {

QuadratureResult integrate_profile(const std::function<double(double)>& f, double tol,
                                   std::span<const double> breakpoints, const char* what) {
  QuadratureResult r;
  try {
    r = integrate_even(f, tol, breakpoints);
  } catch (const QuadratureError& e) {
    if (e.kind() != QuadratureError::Kind::NonFiniteIntegrand) throw;
    throw QuadratureError(QuadratureError::Kind::DivergedAtEndpoint,
                          std::string(what) + ": " + e.what());
  } catch (const EvalError& e) {
    throw QuadratureError(QuadratureError::Kind::DivergedAtEndpoint,
                          std::string(what) + ": " + e.what());
  }
  if (!r.converged) {
    throw QuadratureError(QuadratureError::Kind::ToleranceNotReached,
                          std::string(what) + ": tolerance not reached within the subdivision limit",
                          r.value);
  }
  return r;
}

}  // namespace

IntegralPair compute_integrals(const DeformationProfile& profile, double eps, double tol) {
  if (!(eps > 0.0)) throw DomainError("I1 diverges at eps = 0; eps must be positive");
  const double eps2 = eps * eps;
  const std::array<double, 2> cuts{eps, std::min(1.0, 10.0 * eps)};

  const auto r1 = integrate_profile(
      [&](double y) {
        const double k = profile.k(y);
        return 1.0 / (k * k + eps2);
      },
      tol, cuts, "I1");
  const auto r2 = integrate_profile(
      [&](double y) {
        const double k = profile.k(y);
        return y * y / (k * k + eps2);
      },
      tol, cuts, "I2");

  IntegralPair out;
  out.eps = eps;
  out.i1 = r1.value;
  out.i2 = r2.value;
  out.err1 = r1.error;
  out.err2 = r2.error;
  out.evaluations = r1.evaluations + r2.evaluations;
  return out;
}

double compute_i2_zero(const DeformationProfile& profile, double tol) {
  const double slope = profile.slope_at_origin();
  if (!(slope > 1e-12) || !std::isfinite(slope)) {
    throw ProfileError(ProfileError::Kind::ZeroSlopeAtOrigin, "k'(0) must be positive for a finite I2(0)");
  }
  constexpr double kOriginNeighbourhood = 1e-8;
  const double at_origin = 1.0 / (slope * slope);
  const auto r = integrate_profile(
      [&](double y) {
        if (std::abs(y) < kOriginNeighbourhood) return at_origin;
        const double k = profile.k(y);
        return y * y / (k * k);
      },
      tol, {}, "I2(0)");
  return r.value;
}

}  // namespace minlen
