#include <doctest.h>

#include <cmath>

#include "escat/specfun.hpp"
#include "oracles.hpp"

using namespace escat;
using specfun::BesselKind;

TEST_CASE("bessel basics and Wronskian") {
  CHECK(specfun::bessel_j0(0.0) == doctest::Approx(1.0).epsilon(1e-15));

  // J0 Y0' - J0' Y0 = J1 Y0 - J0 Y1 = 2/(pi x)
  const double w1 = specfun::bessel_j1(1.0) * specfun::bessel_y0(1.0) -
                    specfun::bessel_j0(1.0) * specfun::bessel_y1(1.0);
  CHECK(w1 == doctest::Approx(2.0 / M_PI).epsilon(1e-10));

  for (double x = 0.1; x <= 50.0; x += 0.37) {
    const double w = specfun::bessel_j1(x) * specfun::bessel_y0(x) -
                     specfun::bessel_j0(x) * specfun::bessel_y1(x);
    CHECK(std::abs(w - 2.0 / (M_PI * x)) < 1e-8);
  }
}

TEST_CASE("first J0 zero against the series oracle") {
  const double root = oracles::bisect([](double x) { return specfun::bessel_j0(x); }, 2.0, 3.0);
  const double oracle_root = oracles::bisect([](double x) { return oracles::series_j0(x); }, 2.0, 3.0);
  CHECK(std::abs(root - oracle_root) < 1e-7);
  CHECK(root == doctest::Approx(2.40483).epsilon(1e-5));
}

TEST_CASE("bessel recurrence J1' = J0 - J1/x") {
  const double fd = 1e-6;
  for (double x = 0.1; x <= 50.0; x += 0.29) {
    const double deriv = (specfun::bessel_j1(x + fd) - specfun::bessel_j1(x - fd)) / (2.0 * fd);
    CHECK(std::abs(deriv - (specfun::bessel_j0(x) - specfun::bessel_j1(x) / x)) < 1e-7);
  }
}

TEST_CASE("bessel domain errors") {
  CHECK_THROWS_AS(specfun::bessel(BesselKind::Y, 0, 0.0), Error);
  CHECK_THROWS_AS(specfun::bessel(BesselKind::Y, 1, -1.0), Error);
  CHECK_THROWS_AS(specfun::bessel(BesselKind::J, 0, -0.5), Error);
  CHECK_THROWS_AS(specfun::bessel(BesselKind::J, 2, 1.0), Error);
}

TEST_CASE("hankel1 definition and asymptotics") {
  for (double x : {0.3, 1.0, 7.5, 42.0}) {
    const Complex h = specfun::hankel1(0, x);
    CHECK(h.real() == specfun::bessel_j0(x));
    CHECK(h.imag() == specfun::bessel_y0(x));
  }
  // |H0(x)| sqrt(x) -> sqrt(2/pi)
  CHECK(std::abs(std::abs(specfun::hankel1(0, 50.0)) * std::sqrt(50.0) - std::sqrt(2.0 / M_PI)) <
        1e-2);
  // logarithmic blowup of Y0 at the origin
  CHECK(specfun::hankel1(0, 1e-3).imag() < -1.0);
  CHECK_THROWS_AS(specfun::hankel1(0, 0.0), Error);
}

TEST_CASE("incomplete gamma closed forms") {
  const auto p11 = specfun::incomplete_gamma(1.0, 1.0);
  CHECK(p11.lower == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(p11.upper == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  const auto p21 = specfun::incomplete_gamma(2.0, 1.0);
  CHECK(p21.lower == doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-12));

  // Gamma(3, x) = e^-x (x^2 + 2x + 2)
  const auto p34 = specfun::incomplete_gamma(3.0, 4.0);
  CHECK(p34.upper == doctest::Approx(26.0 * std::exp(-4.0)).epsilon(1e-12));

  CHECK_THROWS_AS(specfun::incomplete_gamma(0.0, 1.0), Error);
  CHECK_THROWS_AS(specfun::incomplete_gamma(1.0, -0.1), Error);
}

TEST_CASE("incomplete gamma pair identity and monotonicity on the grid") {
  for (double s = 0.5; s <= 6.0; s += 0.5) {
    const double total = std::tgamma(s);
    double prev_lower = -1.0;
    double prev_upper = total + 1.0;
    for (double x = 0.0; x <= 50.0; x += 0.5) {
      const auto pair = specfun::incomplete_gamma(s, x);
      CHECK(std::abs(pair.lower + pair.upper - total) <= 1e-10 * total);
      CHECK(pair.lower >= 0.0);
      CHECK(pair.upper >= 0.0);
      CHECK(pair.lower >= prev_lower - 1e-12 * total);
      CHECK(pair.upper <= prev_upper + 1e-12 * total);
      prev_lower = pair.lower;
      prev_upper = pair.upper;
    }
  }
}

TEST_CASE("gamma bound check") {
  const auto r11 = specfun::gamma_bound_check(1.0, 1.0);
  CHECK(r11.holds_lower);
  CHECK(r11.holds_upper);
  CHECK(r11.slack_upper ==
        doctest::Approx(2.0 * std::exp(-0.5) - std::exp(-1.0)).epsilon(1e-10));

  const auto r34 = specfun::gamma_bound_check(3.0, 4.0);
  CHECK(r34.holds_upper);
  CHECK(r34.slack_upper == doctest::Approx(16.0 * std::exp(-2.0) - 26.0 * std::exp(-4.0))
                               .epsilon(1e-10));

  for (double s = 0.5; s <= 6.0; s += 0.5)
    for (double x = 0.0; x <= 50.0; x += 0.5) {
      const auto r = specfun::gamma_bound_check(s, x);
      CHECK(r.holds_lower);
      CHECK(r.holds_upper);
    }
}
