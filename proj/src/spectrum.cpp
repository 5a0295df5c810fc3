#include "minlen/spectrum.hpp"

#include <cmath>

#include "minlen/closed_forms.hpp"
#include "minlen/errors.hpp"

namespace minlen {

namespace {

constexpr int kMaxRefineIterations = 400;
constexpr double kResidualStop = 1e-12;

bool use_closed_forms(const SpectralProblem& problem) {
  return problem.profile.closed_form().has_value() && !problem.force_quadrature;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> grid(points);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < points; ++i) {
    grid[i] = std::exp(llo + (lhi - llo) * i / (points - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

// Root of F on [a, b] with F(a), F(b) of opposite sign. Secant steps are taken
// in log(eps) and accepted only while they shrink the bracket by at least half
// per two iterations; otherwise the bracket is bisected (geometrically when it
// spans more than a factor of two).
double refine_root(const SpectralProblem& problem, double a, double b, double fa, double fb) {
  double best = std::abs(fa) < std::abs(fb) ? a : b;
  double best_f = std::min(std::abs(fa), std::abs(fb));
  double last_width = b - a;
  bool bisect_next = false;
  for (int iter = 0; iter < kMaxRefineIterations; ++iter) {
    if (b - a <= problem.tol_root * b || best_f < kResidualStop) break;

    double x;
    if (!bisect_next) {
      const double la = std::log(a);
      const double lb = std::log(b);
      const double lx = lb - fb * (lb - la) / (fb - fa);
      x = std::exp(lx);
    } else {
      x = (b > 2.0 * a) ? std::sqrt(a * b) : 0.5 * (a + b);
    }
    if (!(x > a && x < b)) x = (b > 2.0 * a) ? std::sqrt(a * b) : 0.5 * (a + b);

    const double fx = spectral_lhs(problem, x) - 1.0;
    if (std::abs(fx) < best_f) {
      best_f = std::abs(fx);
      best = x;
    }
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    const double width = b - a;
    bisect_next = width > 0.5 * last_width;
    last_width = width;
  }
  return best;
}

}  // namespace

SpectralIntegrals spectral_integrals(const SpectralProblem& problem, double eps) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (use_closed_forms(problem)) {
    const ClosedFormId id = *problem.profile.closed_form();
    return {closed_i1(id, eps), closed_i2(id, eps)};
  }
  const IntegralPair pair = compute_integrals(problem.profile, eps, problem.tol_quad);
  return {pair.i1, pair.i2};
}

double spectral_lhs(const SpectralProblem& problem, double eps) {
  const auto& c = problem.couplings;
  if (c.alpha == 0.0 && c.gamma == 0.0) return 0.0;
  const SpectralIntegrals in = spectral_integrals(problem, eps);
  return c.alpha * in.i1 * in.i2 + c.gamma * in.i1;
}

double i2_zero(const SpectralProblem& problem) {
  if (use_closed_forms(problem)) return closed_i2_zero(*problem.profile.closed_form());
  return compute_i2_zero(problem.profile, problem.tol_quad);
}

ExistenceReport exists_bound_state(const SpectralProblem& problem) {
  const auto& c = problem.couplings;
  if (c.alpha < 0.0) throw DomainError("alpha must be non-negative");
  ExistenceReport report;
  report.i2_zero = i2_zero(problem);
  report.gamma0 = c.alpha * report.i2_zero;
  if (c.alpha == 0.0) {
    report.exists = c.gamma > 0.0;
  } else {
    report.exists = c.gamma > -report.gamma0;
  }
  return report;
}

std::vector<std::pair<double, double>> scan_sign_changes(const SpectralProblem& problem, double lo,
                                                         double hi, int points) {
  const std::vector<double> grid = log_grid(lo, hi, points);
  std::vector<std::pair<double, double>> brackets;
  bool prev_positive = spectral_lhs(problem, grid[0]) - 1.0 > 0.0;
  for (int i = 1; i < points; ++i) {
    const bool positive = spectral_lhs(problem, grid[i]) - 1.0 > 0.0;
    if (positive != prev_positive) brackets.emplace_back(grid[i - 1], grid[i]);
    prev_positive = positive;
  }
  return brackets;
}

BoundState solve_bound_state(const SpectralProblem& problem) {
  if (problem.couplings.alpha < 0.0) throw DomainError("alpha must be non-negative");
  double lo = kScanLow;
  double hi = kScanHigh;
  int points = kScanPoints;
  std::vector<std::pair<double, double>> brackets;
  for (int expansion = 0;; ++expansion) {
    brackets = scan_sign_changes(problem, lo, hi, points);
    if (!brackets.empty() || expansion == kScanExpansions) break;
    lo /= 10.0;
    hi *= 10.0;
    // keep the grid density per decade
    points += 2 * kScanPoints / 10;
  }
  if (brackets.empty()) {
    throw NoBracketFound("no sign change of the spectral function on [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]; no bound state");
  }

  std::vector<double> roots;
  for (const auto& [a, b] : brackets) {
    const double fa = spectral_lhs(problem, a) - 1.0;
    const double fb = spectral_lhs(problem, b) - 1.0;
    roots.push_back(refine_root(problem, a, b, fa, fb));
  }

  BoundState state;
  state.eps_star = roots.front();
  state.bracket_lo = brackets.front().first;
  state.bracket_hi = brackets.front().second;
  state.extra_roots.assign(roots.begin() + 1, roots.end());
  const SpectralIntegrals in = spectral_integrals(problem, state.eps_star);
  state.i1_at_root = in.i1;
  state.i2_at_root = in.i2;
  const auto& c = problem.couplings;
  state.residual = std::abs(c.alpha * in.i1 * in.i2 + c.gamma * in.i1 - 1.0);
  if (problem.physical) {
    const double b = resolve_bound(*problem.physical, problem.profile);
    state.energy = energy_from_eps(state.eps_star, b, *problem.physical);
  }
  return state;
}

std::vector<SweepPoint> sweep_alpha(const SpectralProblem& base, GammaSpec gamma,
                                    std::span<const double> alphas) {
  std::vector<SweepPoint> out;
  out.reserve(alphas.size());
  const double base_i2_zero = i2_zero(base);
  for (double alpha : alphas) {
    SweepPoint point;
    point.alpha = alpha;
    point.gamma = gamma.at(alpha, base_i2_zero);
    SpectralProblem problem = base;
    problem.couplings = {alpha, point.gamma};
    try {
      if (!exists_bound_state(problem).exists) {
        point.error = "no bound state";
      } else {
        point.eps_star = solve_bound_state(problem).eps_star;
      }
    } catch (const Error& e) {
      point.error = e.what();
    }
    out.push_back(std::move(point));
  }
  return out;
}

std::vector<LimitPoint> sweep_b_physical(const PhysicalParams& params, const DeformationProfile& profile,
                                         std::span<const double> b_values, double tol_quad) {
  std::vector<LimitPoint> out;
  out.reserve(b_values.size());
  for (double b : b_values) {
    LimitPoint point;
    point.b = b;
    try {
      PhysicalParams p = params;
      p.scale = DeformationScale{DeformationScale::Kind::Bound, b};
      SpectralProblem problem{profile.with_bound(b), to_dimensionless(p, profile), 1e-12, tol_quad, false, p};
      point.gamma = problem.couplings.gamma;
      if (!exists_bound_state(problem).exists) {
        point.error = "no bound state";
      } else {
        const BoundState state = solve_bound_state(problem);
        point.eps_star = state.eps_star;
        point.energy = state.energy;
      }
    } catch (const Error& e) {
      point.error = e.what();
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace minlen
