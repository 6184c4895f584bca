#include "fracperim/monte_carlo.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <random>

#include "fracperim/errors.hpp"
#include "fracperim/order.hpp"
#include "fracperim/parallel.hpp"
#include "fracperim/quadrature.hpp"
#include "fracperim/specfun.hpp"

namespace fracperim::monte_carlo {

namespace qd = fracperim::quadrature;
using shapes::ShapeKind;
using shapes::ShapeSpec;

namespace {

constexpr std::uint64_t kChunk = 8192;
constexpr std::uint64_t kStreamPerimeter = 1;
constexpr std::uint64_t kStreamNormalizer = 2;

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Distance level t of the boundary layer, drawn from t^(-2s) on (0, width].
double layer_depth(CounterRng& rng, double width, double s) {
  return width * std::pow(rng.uniform(), 1.0 / (1.0 - 2.0 * s));
}

struct Draw {
  std::vector<double> x;
  double d;
};

// Points of the ball of radius R with density (R - |x|)^(-2s): the depth
// u = R - |x| has density u^(-2s) (R-u)^(N-1), sampled by rejection.
void ball_point(CounterRng& rng, int n, double R, double s, Draw& out) {
  for (;;) {
    const double u = layer_depth(rng, R, s);
    if (rng.uniform() <= std::pow(1.0 - u / R, n - 1)) {
      rng.direction(out.x);
      for (double& v : out.x) v *= R - u;
      out.d = u;
      return;
    }
  }
}

void annulus_point(CounterRng& rng, int n, double r0, double r1, double s, Draw& out) {
  const double half = 0.5 * (r1 - r0);
  for (;;) {
    const double t = layer_depth(rng, half, s);
    const double rho = rng.uniform() <= 0.5 ? r0 + t : r1 - t;
    if (rng.uniform() <= std::pow(rho / r1, n - 1)) {
      rng.direction(out.x);
      for (double& v : out.x) v *= rho;
      out.d = t;
      return;
    }
  }
}

// The level set {d = t} of the cube is the surface of the concentric cube
// of side a - 2t, of area 2N (a-2t)^(N-1).
void cube_point(CounterRng& rng, int n, double a, double s, Draw& out) {
  for (;;) {
    const double t = layer_depth(rng, 0.5 * a, s);
    if (rng.uniform() <= std::pow(1.0 - 2.0 * t / a, n - 1)) {
      const double half = 0.5 * a - t;
      for (double& v : out.x) v = half * (2.0 * rng.uniform() - 1.0);
      const auto face = std::min<std::uint64_t>(static_cast<std::uint64_t>(rng.uniform() * 2 * n), 2 * n - 1);
      out.x[face / 2] = face % 2 == 0 ? half : -half;
      out.d = t;
      return;
    }
  }
}

// Ellipsoid E = A B_1: y from the ball density (1-|y|)^(-2s), x = A y, and
// the ratio ((1-|y|)/d_E(x))^(2s) <= a_min^(-2s) corrected by rejection.
// Returns false for the measure-zero case of a point rounded onto the
// boundary.
bool ellipsoid_proposal(CounterRng& rng, const ShapeSpec& shape, double s, Draw& out, double& ratio) {
  const auto& axes = shape.semi_axes();
  ball_point(rng, shape.dim(), 1.0, s, out);
  const double depth = out.d;
  for (std::size_t i = 0; i < axes.size(); ++i) out.x[i] *= axes[i];
  if (!shape.contains(out.x)) return false;
  // A maps the ball of radius `depth` around y into E, so d_E >= a_min depth.
  const double amin = *std::min_element(axes.begin(), axes.end());
  out.d = std::max(shape.distance_to_boundary(out.x), amin * depth);
  if (!(out.d > 0.0)) return false;
  ratio = std::pow(depth / out.d, 2.0 * s);
  return true;
}

void ellipsoid_point(CounterRng& rng, const ShapeSpec& shape, double s, Draw& out) {
  const double amin = *std::min_element(shape.semi_axes().begin(), shape.semi_axes().end());
  const double bound = std::pow(amin, 2.0 * s);
  for (;;) {
    double ratio = 0.0;
    if (ellipsoid_proposal(rng, shape, s, out, ratio) && rng.uniform() <= ratio * bound) return;
  }
}

void draw_point(CounterRng& rng, const ShapeSpec& shape, double s, Draw& out) {
  switch (shape.kind()) {
    case ShapeKind::Ball:
      return ball_point(rng, shape.dim(), shape.radius(), s, out);
    case ShapeKind::Annulus:
      return annulus_point(rng, shape.dim(), shape.inner_radius(), shape.outer_radius(), s, out);
    case ShapeKind::Cube:
      return cube_point(rng, shape.dim(), shape.side(), s, out);
    case ShapeKind::Ellipsoid:
      return ellipsoid_point(rng, shape, s, out);
  }
}

// sigma_{N-1} int_0^R rho^(N-1) (R - rho)^(-2s) d rho
double ball_normalizer(int n, double R, double s, bool& ok) {
  const auto r = qd::integrate_endpoint_singular(
      qd::DistanceIntegrand([n, s](double rho, double, double to_r) { return std::pow(rho, n - 1) * std::pow(to_r, -2.0 * s); }),
      0.0, R,
      {0.0, -2.0 * s}, DBL_MIN, {.rel_tol = 1e-13});
  ok = ok && r.converged;
  return specfun::sphere_area(n) * r.value;
}

double annulus_normalizer(int n, double r0, double r1, double s, bool& ok) {
  const double mid = 0.5 * (r0 + r1);
  auto f = [n](double rho, double, double) { return std::pow(rho, n - 1); };
  const auto lo = qd::integrate_endpoint_singular(
      qd::DistanceIntegrand([&](double rho, double from_r0, double) { return f(rho, 0, 0) * std::pow(from_r0, -2.0 * s); }),
      r0, mid, {-2.0 * s, 0.0}, DBL_MIN, {.rel_tol = 1e-13});
  const auto hi = qd::integrate_endpoint_singular(
      qd::DistanceIntegrand([&](double rho, double, double to_r1) { return f(rho, 0, 0) * std::pow(to_r1, -2.0 * s); }),
      mid, r1, {0.0, -2.0 * s}, DBL_MIN, {.rel_tol = 1e-13});
  ok = ok && lo.converged && hi.converged;
  return specfun::sphere_area(n) * (lo.value + hi.value);
}

// Coarea over the level sets: int_0^(a/2) t^(-2s) 2N (a - 2t)^(N-1) dt.
double cube_normalizer(int n, double a, double s, bool& ok) {
  const auto r = qd::integrate_endpoint_singular(
      qd::DistanceIntegrand(
          [n, a, s](double, double t, double) { return std::pow(t, -2.0 * s) * 2.0 * n * std::pow(a - 2.0 * t, n - 1); }),
      0.0, 0.5 * a, {-2.0 * s, 0.0}, DBL_MIN, {.rel_tol = 1e-13});
  ok = ok && r.converged;
  return r.value;
}

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

Order validated_order(const ShapeSpec& shape, double s) { return Order(shape.dim(), s); }

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
    : state_(mix64(mix64(seed ^ mix64(stream)) ^ index)) {}

CounterRng::result_type CounterRng::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform() { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

void CounterRng::direction(std::span<double> out) {
  std::normal_distribution<double> normal;
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : out) {
      v = normal(*this);
      norm2 += v * v;
    }
  } while (!(norm2 > 0.0));
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : out) v *= inv;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) return std::accumulate(values.begin(), values.end(), 0.0);
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

Normalizer importance_normalizer(const ShapeSpec& shape, double s, std::uint64_t nested_samples, std::uint64_t seed) {
  validated_order(shape, s);
  Normalizer z;
  const int n = shape.dim();
  switch (shape.kind()) {
    case ShapeKind::Ball:
      z.value = ball_normalizer(n, shape.radius(), s, z.converged);
      return z;
    case ShapeKind::Annulus:
      z.value = annulus_normalizer(n, shape.inner_radius(), shape.outer_radius(), s, z.converged);
      return z;
    case ShapeKind::Cube:
      z.value = cube_normalizer(n, shape.side(), s, z.converged);
      return z;
    case ShapeKind::Ellipsoid:
      break;
  }

  // Z_E = det A * Z_B * E_B[((1-|y|)/d_E(Ay))^(2s)]
  if (nested_samples < 2) throw DomainError("the ellipsoid normalizer needs at least two nested samples");
  const auto& axes = shape.semi_axes();
  const double det = std::accumulate(axes.begin(), axes.end(), 1.0, std::multiplies<>());
  const double zb = ball_normalizer(n, 1.0, s, z.converged);
  const std::uint64_t chunks = (nested_samples + kChunk - 1) / kChunk;
  std::vector<Moments> parts(chunks);
  parallel::for_each_index(chunks, [&](std::size_t c) {
    Draw draw{std::vector<double>(n), 0.0};
    std::vector<double> ratios;
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(nested_samples, begin + kChunk);
    for (std::uint64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, kStreamNormalizer, i);
      double ratio = 0.0;
      while (!ellipsoid_proposal(rng, shape, s, draw, ratio)) {
      }
      ratios.push_back(ratio);
    }
    std::vector<double> squares(ratios.size());
    std::transform(ratios.begin(), ratios.end(), squares.begin(), [](double v) { return v * v; });
    parts[c] = {pairwise_sum(ratios), pairwise_sum(squares)};
  });
  std::vector<double> sums(chunks), squares(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    sums[c] = parts[c].sum;
    squares[c] = parts[c].sum_sq;
  }
  const double count = static_cast<double>(nested_samples);
  const double mean = pairwise_sum(sums) / count;
  const double var = std::max(0.0, (pairwise_sum(squares) - count * mean * mean) / (count - 1.0));
  z.value = det * zb * mean;
  z.std_error = det * zb * std::sqrt(var / count);
  return z;
}

McEstimate mc_perimeter(const ShapeSpec& shape, double s, std::uint64_t samples, std::uint64_t seed,
                        const McOptions& options) {
  validated_order(shape, s);
  if (samples < 2) throw DomainError("Monte Carlo needs at least two samples");
  const int n = shape.dim();
  const Normalizer z = importance_normalizer(shape, s, samples, seed);
  const double diameter = shape.diameter();

  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel::for_each_index(
      chunks,
      [&](std::size_t c) {
        Draw draw{std::vector<double>(n), 0.0};
        std::vector<double> w(n), y(n);
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(samples, begin + kChunk);
        std::uint64_t count = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
          CounterRng rng(seed, kStreamPerimeter, i);
          draw_point(rng, shape, s, draw);
          const double r = draw.d * std::pow(rng.uniform(), -0.5 / s);
          rng.direction(w);
          if (!(r <= diameter)) {
            ++count;  // farther than any two points of E
            continue;
          }
          for (int k = 0; k < n; ++k) y[k] = draw.x[k] + r * w[k];
          if (!shape.contains(y)) ++count;
        }
        hits[c] = count;
      },
      options.workers);

  // Integer hit counts: the total is exact whatever the chunk order.
  const std::uint64_t total = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  const double p = static_cast<double>(total) / static_cast<double>(samples);
  const double weight = z.value * specfun::sphere_area(n) / s;

  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.normalizer = z.value;
  est.hit_fraction = p;
  est.value = weight * p;
  const double hit_se = weight * std::sqrt(p * (1.0 - p) / (static_cast<double>(samples) - 1.0));
  const double z_se = z.value > 0.0 ? est.value * z.std_error / z.value : 0.0;
  est.std_error = std::sqrt(hit_se * hit_se + z_se * z_se);
  est.converged = z.converged;
  return est;
}

}  // namespace fracperim::monte_carlo
