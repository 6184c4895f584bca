#include "fracperim/fourier_route.hpp"

#include <array>
#include <cfloat>
#include <cstdint>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "fracperim/errors.hpp"
#include "fracperim/specfun.hpp"

namespace fracperim::fourier_route {

namespace sf = fracperim::specfun;
namespace qd = fracperim::quadrature;
using std::numbers::pi;

namespace {

constexpr int kHeadZeros = 20;
constexpr int kTailZeros = 250;
constexpr int kMaxModulusTerms = 12;

// Mean of J_nu(x)^2 over a period: M_nu(x)^2 / 2 with the modulus expansion
//   (1/(pi x)) sum_k c_k / (2x)^(2k),  c_k = prod_{j<=k} (2j-1)(mu-(2j-1)^2)/(2j).
// Terms are kept while they decrease at the split point x0 and matter.
std::vector<double> modulus_coefficients(double nu, double x0) {
  const double mu = 4.0 * nu * nu;
  std::vector<double> c = {1.0};
  double previous = 1.0;
  for (int k = 1; k <= kMaxModulusTerms; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = c.back() * odd * (mu - odd * odd) / (2.0 * k);
    const double size = std::fabs(next) / std::pow(2.0 * x0, 2.0 * k);
    if (!(size < previous)) break;
    c.push_back(next);
    previous = size;
    if (size < 1e-18) break;  // also ends half-integer orders, where c_k vanishes
  }
  return c;
}

double modulus_mean(const std::vector<double>& c, double x) {
  const double w = 1.0 / (4.0 * x * x);
  double sum = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) sum = sum * w + c[k];
  return sum / (pi * x);
}

// int_T^inf r^(2s-1) mean(2 pi r) dr, termwise.
double modulus_tail_integral(const std::vector<double>& c, double s, double T) {
  double sum = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double kk = static_cast<double>(k);
    sum += c[k] / (2.0 * pi * pi * std::pow(4.0 * pi, 2.0 * kk)) * std::pow(T, 2.0 * s - 1.0 - 2.0 * kk) /
           (2.0 * kk + 1.0 - 2.0 * s);
  }
  return sum;
}

}  // namespace

double ball_hat(int dim, double rho) {
  require_dimension(dim);
  if (!(rho > 0.0)) throw DomainError("ball_hat requires rho > 0");
  const double nu = 0.5 * dim;
  return std::pow(rho, -nu) * sf::bessel_j(nu, 2.0 * pi * rho);
}

double radial_integrand(const Order& order, double r) {
  if (!(r > 0.0)) throw DomainError("radial_integrand requires r > 0");
  const double j = sf::bessel_j(0.5 * order.dim(), 2.0 * pi * r);
  return std::pow(r, 2.0 * order.s() - 1.0) * j * j;
}

double plancherel_prefactor(const Order& order) {
  const int n = order.dim();
  const double s = order.s();
  const std::array<double, 1> num = {1.0 - s};
  const std::array<double, 1> den = {0.5 * (n + 2.0 * s)};
  return 2.0 * std::pow(pi, 0.5 * n + 2.0 * s) * sf::gamma_ratio(num, den) / s;
}

double radial_integral_closed(const Order& order) {
  const double nu = 0.5 * order.dim();
  return sf::weber_schafheitlin({nu, nu, 1.0 - 2.0 * order.s(), 2.0 * pi});
}

FourierRouteReport ball_perimeter_fourier(const Order& order, double tol) {
  require_numeric_order(order);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const double nu = 0.5 * order.dim();
  const double s = order.s();
  const auto zeros = sf::bessel_j_zeros(nu, kHeadZeros + kTailZeros);

  // Panel budgets: every head panel is positive, so relative panel
  // tolerances bound the head's relative error; the tail gets an absolute
  // share of the head value.
  const double panel_rel = tol / 8.0;
  qd::QuadResult total;
  total.converged = true;
  auto absorb = [&](const qd::QuadResult& r) {
    total.value += r.value;
    total.abs_error_estimate += r.abs_error_estimate;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  };

  auto integrand = [&order](double r) { return radial_integrand(order, r); };
  const double first = zeros[0] / (2.0 * pi);
  qd::TanhSinhOptions ts;
  ts.rel_tol = panel_rel;
  absorb(qd::integrate_endpoint_singular(
      qd::DistanceIntegrand([&order](double, double r, double) { return radial_integrand(order, r); }), 0.0, first,
      {2.0 * s - 1.0, 0.0}, DBL_MIN, ts));

  qd::AdaptiveOptions gk;
  gk.rel_tol = panel_rel;
  for (int k = 1; k < kHeadZeros; ++k)
    absorb(qd::integrate_adaptive(integrand, zeros[k - 1] / (2.0 * pi), zeros[k] / (2.0 * pi), DBL_MIN, gk));
  const double split = zeros[kHeadZeros - 1] / (2.0 * pi) + 0.125;
  absorb(qd::integrate_adaptive(integrand, zeros[kHeadZeros - 1] / (2.0 * pi), split, DBL_MIN, gk));

  const auto coeffs = modulus_coefficients(nu, 2.0 * pi * split);
  // The remainder vanishes close to j_k/(2 pi) -+ 1/8, but the offset has a
  // fixed sign and survives the averaging; the exact zeros are bracketed
  // there (neighbouring zeros are 1/4 apart) and solved for.
  auto oscillation = [&](double r) {
    const double x = 2.0 * pi * r;
    const double j = sf::bessel_j(nu, x);
    return j * j - modulus_mean(coeffs, x);
  };
  qd::OscillatoryPlan plan;
  for (int k = kHeadZeros; k < kHeadZeros + kTailZeros; ++k) {
    for (double side : {-0.125, 0.125}) {
      const double guess = zeros[k] / (2.0 * pi) + side;
      std::uintmax_t iterations = 100;
      const auto bracket = boost::math::tools::toms748_solve(
          oscillation, guess - 0.0625, guess + 0.0625, boost::math::tools::eps_tolerance<double>(50), iterations);
      plan.partition_points.push_back(0.5 * (bracket.first + bracket.second));
    }
  }
  const double head = total.value;
  auto remainder = [&](double r) { return std::pow(r, 2.0 * s - 1.0) * oscillation(r); };
  absorb(qd::integrate_oscillatory_tail(remainder, split, plan, 0.25 * tol * head));
  total.value += modulus_tail_integral(coeffs, s, split);
  total.converged = total.converged && total.abs_error_estimate <= tol * total.value;

  FourierRouteReport report;
  report.radial_integral = total;
  report.prefactor = plancherel_prefactor(order);
  report.perimeter = report.prefactor * sf::sphere_area(order.dim()) * total.value;
  report.ws_closed_value = radial_integral_closed(order);
  return report;
}

DivergenceEvidence assert_divergence_above_half(int dim, double s) {
  require_dimension(dim);
  if (!(s >= 0.5 && s < 1.0)) {
    std::ostringstream msg;
    msg << "divergence evidence needs s in [1/2, 1); got s = " << s;
    throw DomainError(msg.str());
  }
  const double nu = 0.5 * dim;
  auto integrand = [nu, s](double r) {
    const double j = sf::bessel_j(nu, 2.0 * pi * r);
    return std::pow(r, 2.0 * s - 1.0) * j * j;
  };
  DivergenceEvidence out;
  double running = 0.0;
  double left = 0.0;
  // Half-period panels: J_nu(2 pi r)^2 repeats every 1/2 in r.
  constexpr double kPanel = 0.5;
  for (int k = 1; k <= 4; ++k) {
    const double radius = std::pow(10.0, k);
    while (left < radius) {
      const double right = std::min(radius, left + kPanel);
      running += qd::integrate_adaptive(integrand, left, right, 1e-13).value;
      left = right;
    }
    out.radii.push_back(radius);
    out.partial_integrals.push_back(running);
  }
  return out;
}

}  // namespace fracperim::fourier_route
