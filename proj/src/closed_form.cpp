#include "fracperim/closed_form.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracperim/errors.hpp"
#include "fracperim/specfun.hpp"

namespace fracperim {

Order::Order(int dim, double s) : dim_(dim), s_(s) {
  require_dimension(dim);
  if (!(s > 0.0 && s < 0.5)) {
    std::ostringstream msg;
    msg << "fractional order s = " << s << " outside the valid range (0, 1/2)";
    if (s >= 0.5) msg << "; the s-perimeter of any set with nonempty interior is infinite for s >= 1/2";
    throw DomainError(msg.str());
  }
}

void require_numeric_order(const Order& order) {
  if (order.s() < kMinNumericOrder || order.s() > kMaxNumericOrder) {
    std::ostringstream msg;
    msg << "fractional order s = " << order.s() << " outside the numerical range [" << kMinNumericOrder << ", "
        << kMaxNumericOrder << "]";
    throw DomainError(msg.str());
  }
}

void require_dimension(int dim) {
  if (dim < 2) throw DomainError("dimension N = " + std::to_string(dim) + " is not supported; N >= 2 is required");
}

}  // namespace fracperim

namespace fracperim::closed_form {

namespace sf = fracperim::specfun;
using std::numbers::pi;

namespace {

// Gamma(N/2 + 1)^p without forming Gamma(N/2 + 1) itself.
double gamma_half_dim_power(int dim, double p) { return std::exp(p * sf::ln_gamma(0.5 * dim + 1.0)); }

}  // namespace

double best_constant(const Order& order) {
  const int n = order.dim();
  const double s = order.s();
  const std::array<double, 1> num = {1.0 - 2.0 * s};
  const std::array<double, 2> den = {1.0 - s, 0.5 * (n + 2.0 - 2.0 * s)};
  return n * std::pow(pi, 0.5 * n + s) * sf::gamma_ratio(num, den) / (s * gamma_half_dim_power(n, 2.0 * s / n));
}

double ball_perimeter_closed(const Order& order) {
  return best_constant(order) * std::pow(sf::ball_volume(order.dim()), order.volume_exponent());
}

double cos_kernel_constant(const Order& order) {
  const int n = order.dim();
  const double s = order.s();
  const std::array<double, 1> num = {1.0 - s};
  const std::array<double, 1> den = {0.5 * (n + 2.0 * s)};
  return std::pow(pi, 0.5 * n) * sf::gamma_ratio(num, den) / (s * std::pow(4.0, s));
}

double lambda1_star(const Order& order) {
  const int n = order.dim();
  const double s = order.s();
  const std::array<double, 1> num1 = {0.5 * (n + 2.0 + 2.0 * s)};
  const std::array<double, 1> den1 = {0.5 * (n - 2.0 * s)};
  const std::array<double, 1> num2 = {0.5 * (n + 2.0 * s)};
  const std::array<double, 1> den2 = {0.5 * (n - 2.0 - 2.0 * s)};
  return sf::gamma_ratio(num1, den1) - sf::gamma_ratio(num2, den2);
}

double lambda1_s(const Order& order) {
  const int n = order.dim();
  const double s = order.s();
  const std::array<double, 1> num = {0.5 * (1.0 - 2.0 * s)};
  const std::array<double, 1> den = {0.5 * (n + 2.0 * s)};
  const double prefactor =
      std::pow(2.0, 1.0 - 2.0 * s) * std::pow(pi, 0.5 * (n - 1)) * sf::gamma_ratio(num, den) / (1.0 + 2.0 * s);
  return prefactor * lambda1_star(order);
}

double ball_perimeter_via_eigenvalue(const Order& order) {
  const int n = order.dim();
  const double s = order.s();
  return sf::sphere_area(n) * lambda1_s(order) / (s * (n - 2.0 * s));
}

double limit_s_to_zero(int dim) { return sf::sphere_area(dim); }

double limit_s_to_half(int dim) {
  require_dimension(dim);
  const int n = dim;
  const std::array<double, 0> none{};
  const std::array<double, 1> den = {0.5 * (n + 1.0)};
  return 2.0 * n * std::pow(pi, 0.5 * n) * std::pow(sf::ball_volume(n), (n - 1.0) / n) * sf::gamma_ratio(none, den) /
         gamma_half_dim_power(n, 1.0 / n);
}

double limit_s_to_half_projection(int dim) {
  return sf::angular_projection_constant(dim) * sf::sphere_area(dim);
}

ConstantReport constant_report(const Order& order) {
  return {best_constant(order), ball_perimeter_closed(order), lambda1_star(order), lambda1_s(order),
          cos_kernel_constant(order)};
}

}  // namespace fracperim::closed_form
