#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <utility>

#include "minlen/closed_forms.hpp"
#include "minlen/errors.hpp"
#include "minlen/quadrature.hpp"

using namespace minlen;

namespace {

constexpr double kPi = std::numbers::pi;
const ClosedFormId kAll[] = {ClosedFormId::Cutoff, ClosedFormId::Power32, ClosedFormId::Kempf};

bool removable(ClosedFormId id, double eps) {
  return (id == ClosedFormId::Power32 && std::abs(eps - 1.0) < kRemovableWindow) ||
         (id == ClosedFormId::Kempf && std::abs(eps - 2.0 / kPi) < kRemovableWindow);
}

}  // namespace

TEST_CASE("dilog identities") {
  CHECK(dilog(0.0) == 0.0);
  CHECK(dilog(1.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-16));
  CHECK(std::abs(dilog(-1.0) + kPi * kPi / 12.0) < 1e-15);
  const double ln2 = std::numbers::ln2;
  CHECK(std::abs(dilog(0.5) - (kPi * kPi / 12.0 - ln2 * ln2 / 2.0)) < 1e-15);
  CHECK_THROWS_AS(dilog(1.0 + 1e-12), DomainError);
}

TEST_CASE("dilog against 30-digit reference values") {
  const std::pair<double, double> ref[] = {
      {-50.0, -9.2769951853326218401}, {-3.0, -1.9393754207667089531}, {-1.5, -1.1473806603755707541},
      {-0.9, -0.75216317921726162037}, {-0.7, -0.60515840233770528397}, {-0.3, -0.28007433375958290423},
      {0.2, 0.21100377543970477261},   {0.45, 0.5143989891542119367},   {0.55, 0.65315763150690182913},
      {0.8, 1.0747946000082483594},    {0.99, 1.588625448076375327},    {0.999999, 1.6449192513305107122},
  };
  for (const auto& [x, v] : ref) {
    CAPTURE(x);
    CHECK(std::abs(dilog(x) - v) <= 1e-14);
  }
}

TEST_CASE("dilog branches agree at their seams") {
  const double h = 1e-9;
  CHECK(std::abs(detail::dilog_series(0.5 - h) - detail::dilog_reflection(0.5 - h)) < 1e-12);
  CHECK(std::abs(detail::dilog_series(0.5 + h) - detail::dilog_reflection(0.5 + h)) < 1e-12);
  CHECK(std::abs(detail::dilog_series(-0.5 - h) - detail::dilog_landen(-0.5 - h)) < 1e-12);
  CHECK(std::abs(detail::dilog_landen(-1.0 + h) - detail::dilog_inversion(-1.0 + h)) < 1e-12);
  CHECK(std::abs(detail::dilog_landen(-1.0 - h) - detail::dilog_inversion(-1.0 - h)) < 1e-12);
  CHECK(std::abs(dilog(-1.0 + h) - dilog(-1.0 - h)) < 1e-8);
}

TEST_CASE("printed examples") {
  CHECK(closed_i1(ClosedFormId::Cutoff, 1.0) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(closed_i2(ClosedFormId::Cutoff, 1.0) == doctest::Approx(2.0 - kPi / 2.0).epsilon(1e-15));
  CHECK(closed_i2(ClosedFormId::Cutoff, 1.0) == doctest::Approx(0.4292037).epsilon(1e-7));
  CHECK(closed_i1(ClosedFormId::Kempf, 2.0 / kPi) == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-15));
  CHECK(closed_i1(ClosedFormId::Kempf, 1.0) == doctest::Approx(1.2220).epsilon(1e-4));
  // power32 I2 at eps -> 0 is 2*2/3
  CHECK(closed_i2(ClosedFormId::Power32, 1e-9) == doctest::Approx(4.0 / 3.0).epsilon(1e-8));
  CHECK_THROWS_AS(closed_i1(ClosedFormId::Cutoff, 0.0), DomainError);
  CHECK_THROWS_AS(closed_i2(ClosedFormId::Kempf, -1.0), DomainError);
}

TEST_CASE("closed forms agree with quadrature") {
  const double grid[] = {0.05, 0.2, 0.5, 1.0, 3.0, 20.0, 0.01, 0.9, 1.1, 0.6, 0.7, 1e-3, 150.0};
  for (auto id : kAll) {
    const auto profile = make_builtin(id);
    for (double eps : grid) {
      if (removable(id, eps)) continue;
      CAPTURE(to_string(id));
      CAPTURE(eps);
      const auto q = compute_integrals(profile, eps);
      CHECK(std::abs(closed_i1(id, eps) - q.i1) < 1e-8);
      CHECK(std::abs(closed_i2(id, eps) - q.i2) < 1e-8);
    }
  }
}

TEST_CASE("removable points fall back to quadrature continuously") {
  for (double d : {-2e-4, -5e-5, 0.0, 5e-5, 2e-4}) {
    const double e1 = 1.0 + d;
    const auto p = compute_integrals(make_builtin(ClosedFormId::Power32), e1);
    CHECK(std::abs(closed_i1(ClosedFormId::Power32, e1) - p.i1) < 1e-8);
    CHECK(std::abs(closed_i2(ClosedFormId::Power32, e1) - p.i2) < 1e-8);
    const double e2 = 2.0 / kPi + d;
    const auto k = compute_integrals(make_builtin(ClosedFormId::Kempf), e2);
    CHECK(std::abs(closed_i2(ClosedFormId::Kempf, e2) - k.i2) < 1e-8);
  }
}

TEST_CASE("small-eps limits") {
  CHECK(closed_i1(ClosedFormId::Cutoff, 1e-6) * 1e-6 == doctest::Approx(kPi).epsilon(1e-4));
  CHECK(std::abs(closed_i2(ClosedFormId::Kempf, 1e-4) - (4.0 * std::numbers::ln2 - kPi * kPi / 6.0)) < 1e-3);
  CHECK(closed_i2_zero(ClosedFormId::Cutoff) == 2.0);
  CHECK(closed_i2_zero(ClosedFormId::Power32) == 4.0 / 3.0);
  CHECK(closed_i2_zero(ClosedFormId::Kempf) == doctest::Approx(1.12765).epsilon(1e-5));
}

TEST_CASE("the printed Kempf dilogarithm form is rejected by the quadrature gate") {
  // Realised exactly, the printed Li2(u), Li2(1/u) combination carries an
  // extra -6 ln^2(-u) in the numerator, so it cannot serve as I2; closed_i2
  // uses the form without it.
  const auto kempf = make_builtin(ClosedFormId::Kempf);
  for (double eps : {0.05, 0.2, 0.5, 1.0, 3.0}) {
    CAPTURE(eps);
    const double q = compute_integrals(kempf, eps).i2;
    CHECK(std::abs(kempf_i2_as_printed(eps) - q) > 1e-3);
    CHECK(std::abs(closed_i2(ClosedFormId::Kempf, eps) - q) < 1e-8);
  }
  // the two forms differ exactly by that logarithm where u < 0
  const double eps = 0.3;
  const double u = (kPi * eps - 2.0) / (kPi * eps + 2.0);
  const double l = std::log(-u);
  const double extra = 2.0 / 3.0 * (-6.0 * l * l) / (kPi * eps * (kPi * kPi * eps * eps - 4.0));
  CHECK(kempf_i2_as_printed(eps) - closed_i2(ClosedFormId::Kempf, eps) ==
        doctest::Approx(extra).epsilon(1e-10));
}
