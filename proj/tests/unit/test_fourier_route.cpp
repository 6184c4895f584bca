#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracperim/closed_form.hpp"
#include "fracperim/errors.hpp"
#include "fracperim/fourier_route.hpp"
#include "fracperim/specfun.hpp"

using namespace fracperim;
using namespace fracperim::fourier_route;
namespace sf = fracperim::specfun;
using std::numbers::pi;

namespace {
double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }
}  // namespace

TEST_CASE("ball_hat: Bochner form, small-radius limit, half-integer order") {
  for (double rho : {0.1, 0.7, 1.0, 3.3}) {
    CHECK(rel_err(ball_hat(2, rho), std::cyl_bessel_j(1.0, 2.0 * pi * rho) / rho) < 1e-12);
  }
  for (int n = 2; n <= 8; ++n) CHECK(rel_err(ball_hat(n, 1e-4), sf::ball_volume(n)) < 1e-6);
  const double z = 2.0 * pi;
  CHECK(std::fabs(ball_hat(3, 1.0) - std::sqrt(2.0 / (pi * z)) * (std::sin(z) / z - std::cos(z))) < 1e-15);
  CHECK_THROWS_AS(ball_hat(2, 0.0), DomainError);
  CHECK_THROWS_AS(ball_hat(2, -1.0), DomainError);
}

TEST_CASE("radial_integrand: sign, small-r behaviour, reference value") {
  const Order o(3, 0.3);
  for (int i = 1; i <= 500; ++i) CHECK(radial_integrand(o, 0.037 * i) >= 0.0);
  const double r = 1e-5;
  const double asymptote = std::pow(r, 2.0 * 0.3 - 1.0) * std::pow(pi * r, 3) / std::pow(std::tgamma(2.5), 2);
  CHECK(rel_err(radial_integrand(o, r), asymptote) < 1e-8);
  const double j1 = std::cyl_bessel_j(1.0, 2.0 * pi);
  CHECK(rel_err(radial_integrand(Order(2, 0.25), 1.0), j1 * j1) < 1e-12);
  CHECK_THROWS_AS(radial_integrand(o, 0.0), DomainError);
}

TEST_CASE("Plancherel composition reproduces the closed form without quadrature") {
  for (int n = 2; n <= 10; ++n) {
    for (double s : {0.01, 0.05, 0.1, 0.25, 0.4, 0.45, 0.49}) {
      const Order o(n, s);
      const double composed = plancherel_prefactor(o) * sf::sphere_area(n) * radial_integral_closed(o);
      CHECK(rel_err(composed, closed_form::ball_perimeter_closed(o)) < 1e-12);
    }
  }
}

TEST_CASE("Fourier route on the acceptance grid") {
  for (int n : {2, 3, 4, 7}) {
    for (double s : {0.05, 0.1, 0.25, 0.4, 0.45}) {
      const Order o(n, s);
      const auto report = ball_perimeter_fourier(o, 1e-8);
      INFO("N = " << n << ", s = " << s);
      CHECK(report.radial_integral.converged);
      CHECK(report.radial_integral.abs_error_estimate <= 1e-8 * report.radial_integral.value);
      CHECK(rel_err(report.perimeter, closed_form::ball_perimeter_closed(o)) <= 1e-7);
      CHECK(rel_err(report.radial_integral.value, report.ws_closed_value) <= 1e-8);
      CHECK(report.perimeter ==
            doctest::Approx(report.prefactor * sf::sphere_area(n) * report.radial_integral.value).epsilon(1e-15));
    }
  }
  CHECK(ball_perimeter_fourier(Order(2, 0.25), 1e-8).perimeter == doctest::Approx(124.26).epsilon(1e-4));
}

TEST_CASE("Fourier route near s = 1/2 shows the Gamma(1-2s)/s growth") {
  const Order o(3, 0.49);
  const auto report = ball_perimeter_fourier(o, 1e-6);
  CHECK(report.radial_integral.converged);
  CHECK(rel_err(report.perimeter, closed_form::ball_perimeter_closed(o)) < 1e-6);
  const double moderate = ball_perimeter_fourier(Order(3, 0.25), 1e-6).perimeter;
  CHECK(report.perimeter / moderate > 10.0);
}

TEST_CASE("Fourier route refuses orders outside the numerical range") {
  CHECK_THROWS_AS(ball_perimeter_fourier(Order(2, 1e-8), 1e-8), DomainError);
  CHECK_THROWS_AS(ball_perimeter_fourier(Order(2, 0.25), 0.0), DomainError);
  CHECK_THROWS_AS(ball_perimeter_fourier(Order(2, 0.5), 1e-8), DomainError);
}

TEST_CASE("divergence evidence above s = 1/2") {
  const auto at_half = assert_divergence_above_half(2, 0.5);
  REQUIRE(at_half.partial_integrals.size() == 4);
  for (std::size_t k = 1; k < 4; ++k) CHECK(at_half.partial_integrals[k] > at_half.partial_integrals[k - 1]);
  // Logarithmic growth: each decade adds about ln(10) / (2 pi^2).
  const double per_decade = std::log(10.0) / (2.0 * pi * pi);
  CHECK(rel_err(at_half.partial_integrals[3] - at_half.partial_integrals[2], per_decade) < 1e-2);

  const auto above = assert_divergence_above_half(3, 0.6);
  for (std::size_t k = 1; k < 4; ++k) CHECK(above.partial_integrals[k] > above.partial_integrals[k - 1]);
  // Power growth R^(2s-1): consecutive decade increments grow by 10^0.2.
  const double d2 = above.partial_integrals[2] - above.partial_integrals[1];
  const double d3 = above.partial_integrals[3] - above.partial_integrals[2];
  CHECK(rel_err(d3 / d2, std::pow(10.0, 0.2)) < 2e-2);

  CHECK_THROWS_AS(assert_divergence_above_half(2, 0.499), DomainError);
  CHECK_THROWS_AS(assert_divergence_above_half(2, 1.0), DomainError);
}
