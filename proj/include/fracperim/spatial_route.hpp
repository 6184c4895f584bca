#pragma once

#include "fracperim/order.hpp"
#include "fracperim/quadrature.hpp"

// P_s(B_1) from a real-space double integral (Frank-Seiringer):
//
//   C = 2 sigma_{N-2} int_0^1 r^(2s-1) (1 - r^(N-2s)) I(r) dr,
//   I(r) = int_{-1}^{1} (1 - t^2)^((N-3)/2) (1 - 2rt + r^2)^(-(N+2s)/2) dt,
//
// with sigma_{N-2} the measure of S^(N-2) (sigma_0 = 2), and
//   best_constant = N pi^s / [(N-2s) Gamma(N/2+1)^(2s/N)] * C.

namespace fracperim::spatial_route {

/// The inner angular integral I(r) for 0 <= r < 1; `one_minus_r` is passed
/// separately so that the peak at t = 1 keeps its width (1-r)^2 exactly.
/// `rel_tol` is relative.
quadrature::QuadResult inner_integral(const Order& order, double r, double one_minus_r, double rel_tol);

/// C above. `tol` is relative; converged results have an error estimate of
/// at most tol * |C|.
quadrature::QuadResult frank_seiringer_C(const Order& order, double tol);

/// N pi^s / [(N-2s) Gamma(N/2+1)^(2s/N)], the factor turning C into the
/// isoperimetric quotient of the ball.
double quotient_factor(const Order& order);

/// P_s(B_1) = quotient_factor * C * |B_1|^((N-2s)/N); value and error
/// estimate are both scaled.
quadrature::QuadResult ball_perimeter_spatial(const Order& order, double tol);

}  // namespace fracperim::spatial_route
