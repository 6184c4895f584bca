#include "fracperim/spatial_route.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>

#include "fracperim/errors.hpp"
#include "fracperim/specfun.hpp"

namespace fracperim::spatial_route {

namespace qd = fracperim::quadrature;
namespace sf = fracperim::specfun;

namespace {

void add(qd::QuadResult& total, const qd::QuadResult& part) {
  total.value += part.value;
  total.abs_error_estimate += part.abs_error_estimate;
  total.evaluations += part.evaluations;
  total.converged = total.converged && part.converged;
}

// I(r) * exp(log_scale), with the kernel assembled in logarithms so that the
// peak value (1-r)^(-N-2s) never has to be represented on its own.
qd::QuadResult inner_scaled(const Order& order, double r, double one_minus_r, double rel_tol, double log_scale) {
  const double e = 0.5 * (order.dim() - 3);
  const double k = 0.5 * (order.dim() + 2.0 * order.s());
  const double gap2 = one_minus_r * one_minus_r;
  qd::TanhSinhOptions ts;
  ts.rel_tol = rel_tol;
  qd::AdaptiveOptions gk;
  gk.rel_tol = rel_tol;

  qd::QuadResult total;
  total.converged = true;

  // t in [-1, 0], through sigma = 1 + t: smooth kernel, weight singular at
  // sigma = 0 when N = 2.
  auto far_side = [&](double, double sigma, double) {
    return std::exp(e * std::log(sigma * (2.0 - sigma)) - k * std::log(gap2 + 2.0 * r * (2.0 - sigma)) + log_scale);
  };
  add(total, qd::integrate_endpoint_singular(qd::DistanceIntegrand(far_side), 0.0, 1.0, {e, 0.0}, DBL_MIN, ts));

  // t in [0, 1], through tau = 1 - t: the kernel peaks at tau = 0 with width
  // (1-r)^2/(2r); panels grow geometrically from that width.
  auto near_side = [&](double tau) {
    return std::exp(e * std::log(tau * (2.0 - tau)) - k * std::log(gap2 + 2.0 * r * tau) + log_scale);
  };
  const double width = r > 0.0 ? gap2 / (2.0 * r) : 1.0;
  const double edge = std::min(width, 1.0);
  add(total, qd::integrate_endpoint_singular(
                 qd::DistanceIntegrand([&](double, double tau, double) { return near_side(tau); }), 0.0, edge,
                 {e, 0.0}, DBL_MIN, ts));
  if (edge < 1.0) {
    // Beyond the peak the kernel is a power of tau; in y = log(tau/edge) it
    // decays exponentially.
    auto logarithmic = [&](double y) {
      const double tau = edge * std::exp(y);
      return near_side(tau) * tau;
    };
    add(total, qd::integrate_adaptive(logarithmic, 0.0, -std::log(edge), DBL_MIN, gk));
  }
  return total;
}

}  // namespace

qd::QuadResult inner_integral(const Order& order, double r, double one_minus_r, double rel_tol) {
  return inner_scaled(order, r, one_minus_r, rel_tol, 0.0);
}

qd::QuadResult frank_seiringer_C(const Order& order, double tol) {
  require_numeric_order(order);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const int n = order.dim();
  const double s = order.s();
  const double inner_tol = 0.1 * tol;
  double worst_inner = 0.0;
  bool inner_ok = true;
  std::size_t inner_evals = 0;

  // Below 1-r = kFloor the outer integrand is continued by its exact
  // (1-r)^(-2s) behaviour; its bounded factor changes by O(1-r) there.
  constexpr double kFloor = 1e-100;
  auto outer_at = [&](double r, double one_minus_r) {
    // 1 - r^(N-2s) without cancellation next to r = 1.
    const double log_r = r < 0.5 ? std::log(r) : std::log1p(-one_minus_r);
    const double radial = -std::expm1((n - 2.0 * s) * log_r);
    // I(r) grows like (1-r)^(-1-2s); it is carried scaled by the inverse.
    const double log_scale = (1.0 + 2.0 * s) * std::log(one_minus_r);
    const auto inner = inner_scaled(order, r, one_minus_r, inner_tol, log_scale);
    inner_ok = inner_ok && inner.converged;
    inner_evals += inner.evaluations;
    worst_inner = std::max(worst_inner, inner.abs_error_estimate / std::fabs(inner.value));
    return std::exp((2.0 * s - 1.0) * std::log(r) - log_scale) * radial * inner.value;
  };
  auto outer = [&](double, double r, double one_minus_r) {
    if (one_minus_r >= kFloor) return outer_at(r, one_minus_r);
    return outer_at(1.0 - kFloor, kFloor) * std::pow(kFloor / one_minus_r, 2.0 * s);
  };
  qd::TanhSinhOptions ts;
  ts.rel_tol = 0.5 * tol;
  auto result = qd::integrate_endpoint_singular(qd::DistanceIntegrand(outer), 0.0, 1.0, {2.0 * s - 1.0, -2.0 * s},
                                                DBL_MIN, ts);
  // Every inner value enters with a positive weight, so their worst
  // relative error carries over to the outer integral.
  const double scale = 2.0 * sf::unit_sphere_measure(n - 2);
  result.value *= scale;
  result.abs_error_estimate = scale * result.abs_error_estimate + worst_inner * std::fabs(result.value);
  result.evaluations += inner_evals;
  result.converged = result.converged && inner_ok && result.abs_error_estimate <= tol * std::fabs(result.value);
  return result;
}

double quotient_factor(const Order& order) {
  const int n = order.dim();
  const double s = order.s();
  return n * std::pow(std::numbers::pi, s) / ((n - 2.0 * s) * std::exp(2.0 * s / n * sf::ln_gamma(0.5 * n + 1.0)));
}

qd::QuadResult ball_perimeter_spatial(const Order& order, double tol) {
  auto result = frank_seiringer_C(order, tol);
  const double factor = quotient_factor(order) * std::pow(sf::ball_volume(order.dim()), order.volume_exponent());
  result.value *= factor;
  result.abs_error_estimate *= factor;
  return result;
}

}  // namespace fracperim::spatial_route
