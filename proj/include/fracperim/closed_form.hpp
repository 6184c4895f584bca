#pragma once

#include "fracperim/order.hpp"

// Closed-form constants for the fractional perimeter of the unit ball.
//
// Conventions: P_s(E) is the squared W^{s,2} Gagliardo seminorm of the
// indicator of E,
//
//   P_s(E) = int int |1_E(x) - 1_E(y)|^2 / |x - y|^(N + 2s) dx dy
//          = 2 int_E int_{E^c} |x - y|^(-N - 2s) dy dx,
//
// and the isoperimetric quotient is P_s(E) / |E|^((N - 2s)/N).

namespace fracperim::closed_form {

/// Isoperimetric quotient of the unit ball:
///   N pi^(N/2+s) Gamma(1-2s) / [s Gamma(N/2+1)^(2s/N) Gamma(1-s) Gamma((N+2-2s)/2)]
double best_constant(const Order& order);

/// P_s(B_1) = best_constant * |B_1|^((N-2s)/N).
double ball_perimeter_closed(const Order& order);

/// int_{R^N} (1 - cos h_N) / |h|^(N+2s) dh = pi^(N/2) Gamma(1-s) / [s 4^s Gamma((N+2s)/2)].
double cos_kernel_constant(const Order& order);

/// First eigenvalue of the hypersingular operator D^{1+s} on the sphere.
/// For N = 2 the second Gamma argument is -s and goes through reflection.
double lambda1_star(const Order& order);

/// First eigenvalue of the rescaled operator J_s = c(N,s) D^{1+s}.
double lambda1_s(const Order& order);

/// P_s(B_1) from the spherical eigenvalue: sigma_{N-1} lambda1_s / [s (N - 2s)].
///
/// The eigenvalue relation is usually stated for the one-sided interaction
/// int_E int_{E^c}, which is half of P_s; the factor 2 is included here.
double ball_perimeter_via_eigenvalue(const Order& order);

/// lim_{s->0+} s * best_constant = sigma_{N-1}.
double limit_s_to_zero(int dim);

/// lim_{s->1/2-} (1 - 2s) P_s(B_1), in the form
///   2N pi^(N/2) |B_1|^((N-1)/N) / [Gamma(N/2+1)^(1/N) Gamma((N+1)/2)].
double limit_s_to_half(int dim);

/// The same limit as (angular projection constant) * sigma_{N-1}.
double limit_s_to_half_projection(int dim);

struct ConstantReport {
  double best_constant;
  double ball_perimeter;
  double lambda1_star;
  double lambda1_s;
  double cos_kernel;
};

ConstantReport constant_report(const Order& order);

}  // namespace fracperim::closed_form
