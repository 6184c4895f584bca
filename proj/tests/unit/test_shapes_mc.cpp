#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "fracperim/closed_form.hpp"
#include "fracperim/errors.hpp"
#include "fracperim/monte_carlo.hpp"
#include "fracperim/shapes.hpp"
#include "fracperim/specfun.hpp"

using namespace fracperim;
using namespace fracperim::monte_carlo;
using shapes::ShapeSpec;
namespace sf = fracperim::specfun;

namespace {
double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

// Brute-force distance from an interior point of a 2D ellipse to its boundary.
double ellipse_distance_brute(double a, double b, double x, double y) {
  double best = 1e300;
  const int n = 2'000'000;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    best = std::min(best, std::hypot(a * std::cos(t) - x, b * std::sin(t) - y));
  }
  return best;
}
}  // namespace

TEST_CASE("shapes: distances to the boundary") {
  const auto ball = ShapeSpec::ball(3, 1.0);
  CHECK(std::fabs(ball.distance_to_boundary(std::array{0.3, 0.0, 0.0}) - 0.7) < 1e-15);
  const auto cube = ShapeSpec::cube(2, 1.0);
  CHECK(std::fabs(cube.distance_to_boundary(std::array{0.0, 0.0}) - 0.5) < 1e-15);
  CHECK(std::fabs(cube.distance_to_boundary(std::array{0.4, -0.1}) - 0.1) < 1e-15);
  const auto shell = ShapeSpec::annulus(2, 0.5, 1.0);
  CHECK(std::fabs(shell.distance_to_boundary(std::array{0.75, 0.0}) - 0.25) < 1e-15);
  CHECK(std::fabs(shell.distance_to_boundary(std::array{0.0, 0.6}) - 0.1) < 1e-15);
  CHECK_THROWS_AS(ball.distance_to_boundary(std::array{1.2, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(shell.distance_to_boundary(std::array{0.1, 0.0}), DomainError);

  const auto ell = ShapeSpec::ellipsoid({2.0, 0.5});
  for (auto p : {std::array{0.0, 0.0}, std::array{1.5, 0.1}, std::array{-0.3, 0.35}, std::array{1.9, 0.0}}) {
    const double got = ell.distance_to_boundary(p);
    const double want = ellipse_distance_brute(2.0, 0.5, p[0], p[1]);
    CHECK(got <= want + 1e-12);
    CHECK(rel_err(got, want) < 1e-8);
  }
}

TEST_CASE("shapes: volumes against containment counts") {
  CounterRng rng(7, 0, 0);
  const std::vector<ShapeSpec> sets{ShapeSpec::ball(3, 0.8), ShapeSpec::cube(3, 1.1), ShapeSpec::ellipsoid({1.0, 0.6, 0.3}),
                                    ShapeSpec::annulus(3, 0.4, 0.9)};
  for (const auto& set : sets) {
    const double h = 0.5 * set.diameter();
    const int n = 400'000;
    int inside = 0;
    std::array<double, 3> x{};
    for (int i = 0; i < n; ++i) {
      for (double& v : x) v = h * (2.0 * rng.uniform() - 1.0);
      inside += set.contains(x) ? 1 : 0;
    }
    const double box = 8.0 * h * h * h;
    const double p = static_cast<double>(inside) / n;
    const double se = box * std::sqrt(p * (1.0 - p) / n);
    CHECK(std::fabs(box * p - set.volume()) < 4.0 * se);
  }
  CHECK(std::fabs(ShapeSpec::ball(2, 1.0).volume() - std::numbers::pi) < 1e-15);
  CHECK_THROWS_AS(ShapeSpec::annulus(2, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(ShapeSpec::cube(1, 1.0), DomainError);
}

TEST_CASE("rng: uniform range and deterministic streams") {
  CounterRng a(42, 1, 5), b(42, 1, 5), c(42, 1, 6);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
    CHECK(u == b.uniform());
  }
  CHECK(a() != c());
  std::array<double, 4> w{};
  c.direction(w);
  CHECK(std::fabs(w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3] - 1.0) < 1e-15);
}

TEST_CASE("normalizer: ball against the Beta closed form, cube and annulus by additivity") {
  for (int n : {2, 3, 5}) {
    for (double s : {0.05, 0.25, 0.45}) {
      const double R = 1.7;
      const double beta = sf::sphere_area(n) * std::pow(R, n - 2.0 * s) * std::tgamma(n) * std::tgamma(1.0 - 2.0 * s) /
                          std::tgamma(n + 1.0 - 2.0 * s);
      const auto z = importance_normalizer(ShapeSpec::ball(n, R), s, 2, 1);
      CHECK(z.converged);
      CHECK(rel_err(z.value, beta) < 1e-11);
    }
  }
  // A square of side a: 4 int_0^(a/2) t^(-2s) (a-2t) dt.
  const double s = 0.2, a = 1.3;
  const double h = 0.5 * a;
  const double want = 4.0 * (a * std::pow(h, 1 - 2 * s) / (1 - 2 * s) - 2.0 * std::pow(h, 2 - 2 * s) / (2 - 2 * s));
  CHECK(rel_err(importance_normalizer(ShapeSpec::cube(2, a), s, 2, 1).value, want) < 1e-11);
  // Planar annulus: 2 pi (r0 + r1) h^(1-2s) / (1-2s), h = (r1 - r0)/2.
  const double r0 = 0.4, r1 = 1.1, hw = 0.5 * (r1 - r0);
  const double ring = 2.0 * std::numbers::pi * (r0 + r1) * std::pow(hw, 1 - 2 * s) / (1 - 2 * s);
  CHECK(rel_err(importance_normalizer(ShapeSpec::annulus(2, r0, r1), s, 2, 1).value, ring) < 1e-11);
  const auto disc = importance_normalizer(ShapeSpec::ball(2, 1.0), 0.3, 2, 1).value;
  // An ellipsoid with equal axes is a ball; the nested average is then 1.
  const auto round = importance_normalizer(ShapeSpec::ellipsoid({1.0, 1.0}), 0.3, 20000, 3);
  CHECK(rel_err(round.value, disc) < 1e-9);
}

TEST_CASE("mc_perimeter: unbiased for the disc at 1e6 samples") {
  for (double s : {0.1, 0.25}) {
    const auto est = mc_perimeter(ShapeSpec::ball(2, 1.0), s, 1'000'000, 42);
    const double exact = closed_form::ball_perimeter_closed(Order(2, s));
    CHECK(est.std_error / est.value <= 0.01);
    CHECK(std::fabs(est.value - exact) <= 3.0 * est.std_error);
  }
}

TEST_CASE("mc_perimeter: scaling P_s(R B) = R^(N-2s) P_s(B)") {
  const double s = 0.3;
  const auto one = mc_perimeter(ShapeSpec::ball(3, 1.0), s, 200'000, 9);
  const auto two = mc_perimeter(ShapeSpec::ball(3, 2.0), s, 200'000, 9);
  // Same stream, exactly scaled geometry: the hit fractions coincide.
  CHECK(one.hit_fraction == two.hit_fraction);
  CHECK(rel_err(two.value, std::pow(2.0, 3.0 - 2.0 * s) * one.value) < 1e-10);
}

TEST_CASE("mc_perimeter: bit-identical across worker counts and runs") {
  const auto shape = ShapeSpec::ellipsoid({1.0, 0.7, 0.4});
  const auto a = mc_perimeter(shape, 0.2, 50'000, 11, {.workers = 1});
  const auto b = mc_perimeter(shape, 0.2, 50'000, 11, {.workers = 3});
  const auto c = mc_perimeter(shape, 0.2, 50'000, 11, {.workers = 8});
  CHECK(a.value == b.value);
  CHECK(a.value == c.value);
  CHECK(a.std_error == c.std_error);
  const auto d = mc_perimeter(shape, 0.2, 50'000, 12, {.workers = 1});
  CHECK(a.value != d.value);
}

TEST_CASE("mc_perimeter: other shapes exceed the ball's quotient") {
  const double s = 0.25;
  const Order o(2, s);
  const double best = closed_form::best_constant(o);
  for (const auto& shape : {ShapeSpec::cube(2, 1.0), ShapeSpec::annulus(2, 0.5, 1.0)}) {
    const auto est = mc_perimeter(shape, s, 400'000, 42);
    const double q = est.value / std::pow(shape.volume(), o.volume_exponent());
    const double q_se = est.std_error / std::pow(shape.volume(), o.volume_exponent());
    CHECK(q - best > 3.0 * q_se);
  }
}

TEST_CASE("mc_perimeter: refusals") {
  const auto ball = ShapeSpec::ball(2, 1.0);
  CHECK_THROWS_AS(mc_perimeter(ball, 0.5, 1000, 1), DomainError);
  CHECK_THROWS_AS(mc_perimeter(ball, 0.7, 1000, 1), DomainError);
  CHECK_THROWS_AS(mc_perimeter(ball, 0.0, 1000, 1), DomainError);
  CHECK_THROWS_AS(mc_perimeter(ball, 0.2, 1, 1), DomainError);
  CHECK_THROWS_AS(importance_normalizer(ShapeSpec::ellipsoid({1.0, 2.0}), 0.2, 1, 1), DomainError);
}

TEST_CASE("pairwise_sum") {
  std::vector<double> v(1000, 0.1);
  CHECK(std::fabs(pairwise_sum(v) - 100.0) < 1e-12);
  CHECK(pairwise_sum(std::span<const double>{}) == 0.0);
}
