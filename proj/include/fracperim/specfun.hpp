#pragma once

#include <span>
#include <vector>

// Real-line special functions: Gamma, Bessel J of real order >= 0, Bessel
// zeros, and the Weber-Schafheitlin closed form. Everything here is a pure
// function of its arguments.

namespace fracperim::specfun {

/// Gamma(x). Throws PoleError at non-positive integers and OverflowError
/// when the result exceeds the double range (x > ~171.62).
double gamma(double x);

/// log Gamma(x) for x > 0. Throws DomainError for x <= 0.
double ln_gamma(double x);

/// 1/Gamma(x); zero at the poles, never throws.
double rgamma(double x);

/// log|Gamma(x)| together with the sign of Gamma(x).
struct SignedLogGamma {
  double log_abs;
  int sign;
};
SignedLogGamma signed_ln_gamma(double x);

/// sin(pi x) with exact zeros at the integers.
double sin_pi(double x);

/// Product of Gamma(num[i]) divided by the product of Gamma(den[i]). Poles
/// in the denominator make the result zero; poles in the numerator throw.
/// Uses direct evaluation when every argument lies in [-5, 30] and log
/// differences otherwise.
double gamma_ratio(std::span<const double> num, std::span<const double> den);

/// Bessel function of the first kind J_nu(z) for nu >= 0 and z >= 0.
double bessel_j(double nu, double z);

/// k-th positive zero of J_nu, k >= 1.
double bessel_j_zero(double nu, int k);

/// The first `count` positive zeros of J_nu in increasing order.
std::vector<double> bessel_j_zeros(double nu, int count);

struct WsParams {
  double nu;
  double mu;
  double lambda;
  double alpha;
};

/// Closed form of  int_0^inf r^-lambda J_nu(alpha r) J_mu(alpha r) dr,
/// valid for nu + mu + 1 > lambda > 0 and alpha > 0.
double weber_schafheitlin(const WsParams& p);

/// Surface measure of the unit sphere S^k embedded in R^(k+1), for k >= 0
/// (S^0 is two points, measure 2).
double unit_sphere_measure(int k);

/// (N-1)-dimensional area of the unit sphere in R^N, N >= 2.
double sphere_area(int dim);

/// Volume of the unit ball in R^N, N >= 2.
double ball_volume(int dim);

/// Integral of |<e_N, w>| over the unit sphere in R^N, N >= 2.
double angular_projection_constant(int dim);

}  // namespace fracperim::specfun
