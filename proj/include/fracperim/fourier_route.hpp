#pragma once

#include <vector>

#include "fracperim/order.hpp"
#include "fracperim/quadrature.hpp"

// P_s(B_1) through Plancherel: with the Fourier transform of the ball given
// by Bochner's formula,
//
//   P_s(B_1) = prefactor * sigma_{N-1} * int_0^inf r^(2s-1) J_{N/2}(2 pi r)^2 dr,
//   prefactor = 2 pi^(N/2+2s) Gamma(1-s) / [s Gamma((N+2s)/2)].

namespace fracperim::fourier_route {

/// Fourier transform of the unit-ball indicator at radius rho > 0:
/// rho^(-N/2) J_{N/2}(2 pi rho).
double ball_hat(int dim, double rho);

/// r^(2s-1) J_{N/2}(2 pi r)^2 for r > 0.
double radial_integrand(const Order& order, double r);

/// 2 pi^(N/2+2s) Gamma(1-s) / [s Gamma((N+2s)/2)].
double plancherel_prefactor(const Order& order);

/// Weber-Schafheitlin value of the radial integral.
double radial_integral_closed(const Order& order);

struct FourierRouteReport {
  quadrature::QuadResult radial_integral;
  double prefactor = 0.0;
  double perimeter = 0.0;
  double ws_closed_value = 0.0;
};

/// The radial integral is split at T = j_{N/2,20}/(2 pi) + 1/8. On [0, T]
/// the panels run between Bessel zeros; the first one carries the
/// r^(2s-1) singularity. On [T, inf) the non-oscillatory mean of
/// J_{N/2}(2 pi r)^2 (the modulus expansion, leading term 1/(2 pi^2 r)) is
/// subtracted and integrated in closed form; the remainder alternates in
/// sign between the points j_k/(2 pi) -+ 1/8 and goes to the tail engine.
/// Converged reports have a total error estimate of at most tol * value.
/// Requires s inside the numerical range.
FourierRouteReport ball_perimeter_fourier(const Order& order, double tol);

struct DivergenceEvidence {
  std::vector<double> radii;
  std::vector<double> partial_integrals;
};

/// Partial integrals of r^(2s-1) J_{N/2}(2 pi r)^2 over [0, 10^k], k = 1..4,
/// for s in [1/2, 1), where the full integral diverges. Throws DomainError
/// outside that range.
DivergenceEvidence assert_divergence_above_half(int dim, double s);

}  // namespace fracperim::fourier_route
