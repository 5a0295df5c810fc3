#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "minlen/closed_forms.hpp"
#include "minlen/errors.hpp"
#include "minlen/spectrum.hpp"
#include "random_profiles.hpp"

using namespace minlen;

namespace {

constexpr double kPi = std::numbers::pi;
const ClosedFormId kAll[] = {ClosedFormId::Cutoff, ClosedFormId::Power32, ClosedFormId::Kempf};

SpectralProblem problem(ClosedFormId id, double alpha, double gamma) {
  return SpectralProblem{make_builtin(id), {alpha, gamma}};
}

// Independent bisection on eps - 2 atan(1/eps), the cutoff form of gamma I1 = 1 at gamma = 1.
double bisect_cutoff_delta_root() {
  double lo = 0.5;
  double hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid - 2.0 * std::atan(1.0 / mid) < 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("spectral_lhs examples") {
  CHECK(spectral_lhs(problem(ClosedFormId::Kempf, 0.0, 0.0), 0.3) == 0.0);
  CHECK(spectral_lhs(problem(ClosedFormId::Cutoff, 1.0, 0.0), 1.0) ==
        doctest::Approx((kPi / 2.0) * (2.0 - kPi / 2.0)).epsilon(1e-15));
  CHECK(spectral_lhs(problem(ClosedFormId::Cutoff, 1.0, 0.0), 1.0) == doctest::Approx(0.674192).epsilon(1e-6));
  CHECK(spectral_lhs(problem(ClosedFormId::Cutoff, 0.0, 1.0), 1.0) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(spectral_lhs(problem(ClosedFormId::Cutoff, 1.0, 0.0), 0.0), DomainError);
}

TEST_CASE("existence and threshold") {
  auto r = exists_bound_state(problem(ClosedFormId::Cutoff, 1.0, 0.0));
  CHECK(r.exists);
  CHECK(r.gamma0 == 2.0);
  CHECK(r.i2_zero == 2.0);
  CHECK_FALSE(exists_bound_state(problem(ClosedFormId::Cutoff, 1.0, -2.5)).exists);
  CHECK_FALSE(exists_bound_state(problem(ClosedFormId::Cutoff, 1.0, -2.0)).exists);  // strict inequality
  CHECK(exists_bound_state(problem(ClosedFormId::Cutoff, 1.0, -1.999)).exists);
  CHECK_FALSE(exists_bound_state(problem(ClosedFormId::Cutoff, 0.0, 0.0)).exists);
  CHECK_FALSE(exists_bound_state(problem(ClosedFormId::Kempf, 0.0, -0.1)).exists);
  CHECK(exists_bound_state(problem(ClosedFormId::Kempf, 0.0, 0.1)).exists);
  CHECK(exists_bound_state(problem(ClosedFormId::Power32, 3.0, 0.0)).gamma0 == doctest::Approx(4.0));
  CHECK_THROWS_AS(exists_bound_state(problem(ClosedFormId::Cutoff, -1.0, 0.0)), DomainError);
}

TEST_CASE("constructed root at eps = 1") {
  const double alpha = 1.0 / ((kPi / 2.0) * (2.0 - kPi / 2.0));
  CHECK(alpha == doctest::Approx(1.48325797776516259515744434406).epsilon(1e-15));
  const auto s = solve_bound_state(problem(ClosedFormId::Cutoff, alpha, 0.0));
  CHECK(std::abs(s.eps_star - 1.0) < 1e-9);
  CHECK(s.residual < 1e-9);
  CHECK(s.bracket_lo < s.eps_star);
  CHECK(s.eps_star < s.bracket_hi);
  CHECK_FALSE(s.multiple_roots());
  CHECK_FALSE(s.energy.has_value());
}

TEST_CASE("pure delta roots") {
  const auto cutoff = solve_bound_state(problem(ClosedFormId::Cutoff, 0.0, 1.0));
  CHECK(cutoff.eps_star == doctest::Approx(bisect_cutoff_delta_root()).epsilon(1e-11));
  CHECK(cutoff.eps_star == doctest::Approx(1.30654237418880620222872783192).epsilon(1e-11));

  const auto kempf = solve_bound_state(problem(ClosedFormId::Kempf, 0.0, 1.0));
  const double exact = (-1.0 + std::sqrt(1.0 + 2.0 * kPi * kPi)) / kPi;
  CHECK(exact * (kPi * exact + 2.0) == doctest::Approx(2.0 * kPi));
  CHECK(std::abs(kempf.eps_star - exact) < 1e-9 * exact);
}

TEST_CASE("no bracket when the state does not exist") {
  CHECK_THROWS_AS(solve_bound_state(problem(ClosedFormId::Cutoff, 0.0, 0.0)), NoBracketFound);
  CHECK_THROWS_AS(solve_bound_state(problem(ClosedFormId::Kempf, 1.0, -2.0)), NoBracketFound);
}

TEST_CASE("exactly one sign change on the scan grid") {
  for (auto id : kAll) {
    for (double alpha : {0.1, 1.0, 10.0}) {
      const double gamma0 = alpha * closed_i2_zero(id);
      for (double gamma : {0.0, -gamma0 / 2.0, 1.0}) {
        CAPTURE(to_string(id));
        CAPTURE(alpha);
        CAPTURE(gamma);
        CHECK(scan_sign_changes(problem(id, alpha, gamma), 1e-6, 1e4, 400).size() == 1);
      }
    }
  }
}

TEST_CASE("threshold consistency") {
  for (auto id : kAll) {
    for (double alpha : {0.5, 2.0}) {
      const double gamma0 = alpha * closed_i2_zero(id);
      const auto above = problem(id, alpha, -gamma0 * (1.0 - 1e-3));
      CHECK(exists_bound_state(above).exists);
      const auto s = solve_bound_state(above);
      CHECK(s.residual < 1e-9);
      CHECK(s.eps_star < 1e-2);
      const auto below = problem(id, alpha, -gamma0 * (1.0 + 1e-3));
      CHECK_FALSE(exists_bound_state(below).exists);
      CHECK_THROWS_AS(solve_bound_state(below), NoBracketFound);
    }
  }
}

TEST_CASE("closed-form and quadrature solvers agree") {
  for (auto id : kAll) {
    for (double alpha : {0.1, 1.0, 10.0}) {
      for (double gamma : {0.0, 0.5}) {
        auto p = problem(id, alpha, gamma);
        const double closed = solve_bound_state(p).eps_star;
        p.force_quadrature = true;
        const auto quad = solve_bound_state(p);
        CAPTURE(to_string(id));
        CAPTURE(alpha);
        CHECK(std::abs(quad.eps_star - closed) / closed < 1e-7);
        CHECK(quad.residual < 1e-9);
      }
    }
  }
}

TEST_CASE("custom profiles solve through quadrature") {
  for (const auto& profile : testing::random_custom_profiles(3, 7)) {
    SpectralProblem p{profile, {1.0, 0.2}};
    const auto s = solve_bound_state(p);
    CHECK(s.residual < 1e-9);
    CHECK(std::abs(spectral_lhs(p, s.eps_star) - 1.0) < 1e-9);
  }
}

TEST_CASE("sweep_alpha") {
  const std::vector<double> grid{0.5, 1.0, 2.0};
  auto points = sweep_alpha(problem(ClosedFormId::Cutoff, 0.0, 0.0), {}, grid);
  REQUIRE(points.size() == 3);
  CHECK(*points[0].eps_star < *points[1].eps_star);
  CHECK(*points[1].eps_star < *points[2].eps_star);

  // alpha -> 0+ drives eps* -> 0
  const std::vector<double> tiny{1e-1, 1e-2, 1e-3};
  points = sweep_alpha(problem(ClosedFormId::Kempf, 0.0, 0.0), {}, tiny);
  CHECK(*points[2].eps_star < *points[1].eps_star);
  CHECK(*points[1].eps_star < *points[0].eps_star);
  CHECK(*points[2].eps_star < 1e-2);

  // gamma = -1.9 on the cutoff needs alpha > 0.95
  const std::vector<double> near{0.9, 0.96, 1.0};
  points = sweep_alpha(problem(ClosedFormId::Cutoff, 0.0, 0.0), {-1.9, false}, near);
  CHECK_FALSE(points[0].eps_star.has_value());
  CHECK(points[0].error == "no bound state");
  REQUIRE(points[1].eps_star.has_value());
  CHECK(*points[1].eps_star < 0.05);
  const auto lhs_minus_one = [&](double eps) {
    return spectral_lhs(problem(ClosedFormId::Cutoff, 0.96, -1.9), eps) - 1.0;
  };
  CHECK(lhs_minus_one(*points[1].eps_star * 0.5) > 0.0);
  CHECK(lhs_minus_one(*points[1].eps_star * 2.0) < 0.0);

  // relative gamma is evaluated per alpha
  points = sweep_alpha(problem(ClosedFormId::Power32, 0.0, 0.0), {-0.5, true}, grid);
  CHECK(points[1].gamma == doctest::Approx(-0.5 * 1.0 * 4.0 / 3.0));
}

TEST_CASE("eps* is monotone in alpha at fixed gamma") {
  std::vector<double> grid;
  for (int i = 0; i < 30; ++i) grid.push_back(0.05 * std::pow(1.3, i));
  for (auto id : kAll) {
    for (double gamma : {0.0, 0.3, -0.2}) {
      const auto points = sweep_alpha(problem(id, 0.0, 0.0), {gamma, false}, grid);
      std::optional<double> prev;
      for (const auto& p : points) {
        if (!p.eps_star) continue;
        if (prev) CHECK(*p.eps_star >= *prev);
        prev = p.eps_star;
      }
    }
  }
}

TEST_CASE("sweep_b_physical: pure delta-prime energy grows as b^2") {
  PhysicalParams p{1.0, 1.0, 2.0, 0.0, std::nullopt};
  const std::vector<double> bs{1.0, 2.0, 4.0, 8.0};
  for (auto id : kAll) {
    const auto points = sweep_b_physical(p, make_builtin(id), bs);
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
      REQUIRE(points[i].energy.has_value());
      CHECK(*points[i].eps_star == *points[i + 1].eps_star);
      CHECK(*points[i + 1].energy / *points[i].energy == doctest::Approx(4.0).epsilon(1e-12));
      CHECK(*points[i].energy < 0.0);
    }
  }
}

TEST_CASE("sweep_b_physical: pure delta") {
  // lambda > 0: gamma -> 0+, eps* -> 0 and the cutoff energy tends to the
  // undeformed delta-well value -m lambda^2 / (2 hbar^2)
  PhysicalParams p{1.0, 1.0, 0.0, 1.0, std::nullopt};
  const std::vector<double> bs{1.0, 10.0, 100.0, 1e4, 1e6};
  const auto points = sweep_b_physical(p, make_builtin(ClosedFormId::Cutoff), bs);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    CHECK(points[i + 1].gamma < points[i].gamma);
    CHECK(*points[i + 1].eps_star < *points[i].eps_star);
  }
  CHECK(points.back().gamma > 0.0);
  CHECK(*points.back().energy == doctest::Approx(-0.5).epsilon(1e-5));

  // lambda < 0: gamma < 0 for every b, no bound state anywhere
  p.lambda = -1.0;
  for (const auto& pt : sweep_b_physical(p, make_builtin(ClosedFormId::Kempf), bs)) {
    CHECK(pt.gamma < 0.0);
    CHECK_FALSE(pt.eps_star.has_value());
    CHECK_FALSE(pt.energy.has_value());
  }
}

TEST_CASE("physical energy on a solved state") {
  SpectralProblem p{make_builtin(ClosedFormId::Cutoff), {1.0, 0.0}};
  p.physical = PhysicalParams{1.0, 2.0, 0.0, 0.0, DeformationScale{DeformationScale::Kind::Bound, 3.0}};
  const auto s = solve_bound_state(p);
  REQUIRE(s.energy.has_value());
  CHECK(*s.energy == doctest::Approx(-(s.eps_star * 3.0) * (s.eps_star * 3.0) / 4.0));
}
