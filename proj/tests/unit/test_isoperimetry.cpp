#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracperim/closed_form.hpp"
#include "fracperim/errors.hpp"
#include "fracperim/isoperimetry.hpp"
#include "fracperim/specfun.hpp"

using namespace fracperim;
using namespace fracperim::isoperimetry;
using shapes::ShapeSpec;

namespace {
double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }
}  // namespace

TEST_CASE("quotient: ball consistency, scaling, linearity") {
  for (int n = 2; n <= 10; ++n) {
    for (int k = 1; k <= 9; ++k) {
      const Order o(n, 0.05 * k);
      const double p = closed_form::ball_perimeter_closed(o);
      const double v = specfun::ball_volume(n);
      CHECK(rel_err(quotient(p, v, o), closed_form::best_constant(o)) < 1e-14);
      const double lambda = 1.7;
      CHECK(rel_err(quotient(std::pow(lambda, n - 2 * o.s()) * p, std::pow(lambda, n) * v, o), quotient(p, v, o)) < 1e-14);
      CHECK(quotient(2 * p, v, o) == 2 * quotient(p, v, o));
    }
  }
  CHECK_THROWS_AS(quotient(0.0, 1.0, Order(2, 0.1)), DomainError);
  CHECK_THROWS_AS(quotient(1.0, -1.0, Order(2, 0.1)), DomainError);
}

TEST_CASE("classify thresholds") {
  CHECK(classify(3.5) == Verdict::Positive);
  CHECK(classify(-3.5) == Verdict::Negative);
  CHECK(classify(0.5) == Verdict::Compatible);
  CHECK(classify(-2.0) == Verdict::Inconclusive);
  CHECK(std::string(verdict_name(Verdict::Compatible)) == "compatible");
}

TEST_CASE("deficit: ball compatible with zero, cube and annulus positive") {
  const Order o(2, 0.1);
  const auto ball = deficit(ShapeSpec::ball(2, 1.0), o, 400'000, 42);
  CHECK(std::fabs(ball.z) <= 3.0);
  CHECK(ball.quotient == doctest::Approx(closed_form::best_constant(o)).epsilon(0.01));
  CHECK(deficit(ShapeSpec::cube(2, 1.0), o, 400'000, 42).verdict == Verdict::Positive);
  CHECK(deficit(ShapeSpec::annulus(2, 0.5, 1.0), o, 400'000, 42).verdict == Verdict::Positive);
  CHECK_THROWS_AS(deficit(ShapeSpec::ball(3, 1.0), o, 1000, 1), DomainError);
}

TEST_CASE("limit sweeps") {
  for (int n : {2, 3, 5}) {
    const auto zero = limit_sweep_zero(n);
    REQUIRE(zero.extrapolated);
    CHECK(rel_err(*zero.extrapolated, specfun::sphere_area(n)) < 1e-3);
    CHECK(zero.monotone);
    const auto half = limit_sweep_half(n);
    REQUIRE(half.extrapolated);
    CHECK(rel_err(*half.extrapolated, half.target) < 1e-3);
    REQUIRE(half.comparison);
    CHECK(rel_err(*half.comparison, half.target) < 1e-12);
    CHECK(half.monotone);
  }
  CHECK(rel_err(*limit_sweep_zero(2).extrapolated, 2 * std::numbers::pi) < 1e-3);
  CHECK(rel_err(*limit_sweep_half(2).extrapolated, 8 * std::numbers::pi) < 1e-3);
  const auto one = limit_sweep_zero(3, {0.01});
  CHECK(one.rows.size() == 1);
  CHECK(!one.extrapolated);
  CHECK_THROWS_AS(limit_sweep_zero(2, {}), DomainError);
  CHECK_THROWS_AS(limit_sweep_zero(2, {0.2, 0.1}), DomainError);
  CHECK_THROWS_AS(limit_sweep_half(2, {0.3, 0.5}), DomainError);
}
