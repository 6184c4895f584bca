#pragma once

#include <cstddef>
#include <functional>
#include <vector>

// One-dimensional integration engines. Integrands must be pure: the engines
// may call them in any order and expect identical values for identical
// arguments. Every engine is deterministic and reports non-convergence
// through QuadResult::converged instead of throwing.

namespace fracperim::quadrature {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Integrand that also receives the exact distances x - a and b - x. Near an
/// endpoint the distance is known to full relative precision even when x
/// itself rounds to the endpoint.
using DistanceIntegrand = std::function<double(double x, double from_a, double to_b)>;

struct AdaptiveOptions {
  /// Accept when the error estimate is below max(tol, rel_tol * |value|).
  double rel_tol = 0.0;
  std::size_t max_panels = 4000;
};

/// Globally adaptive 10/21-point Gauss-Kronrod quadrature; the panel with the
/// largest error estimate is bisected first.
QuadResult integrate_adaptive(const Integrand& f, double a, double b, double tol, const AdaptiveOptions& opts = {});

/// Algebraic endpoint behaviour f ~ (x-a)^p near a and f ~ (b-x)^q near b.
struct SingularExponents {
  double p = 0.0;
  double q = 0.0;
};

struct TanhSinhOptions {
  double rel_tol = 0.0;
  int max_levels = 12;
};

/// Splits [a, b] at the midpoint; on each half the substitution
/// x - a = h u^(1/(1+p)) (resp. b - x) removes the algebraic factor, and the
/// remaining bounded integrand is summed with the tanh-sinh rule in u.
/// Exponents >= 0 are regular and left untransformed. Throws DomainError for
/// p <= -1 or q <= -1.
QuadResult integrate_endpoint_singular(const Integrand& f, double a, double b, SingularExponents exps, double tol,
                                       const TanhSinhOptions& opts = {});
QuadResult integrate_endpoint_singular(const DistanceIntegrand& f, double a, double b, SingularExponents exps,
                                       double tol, const TanhSinhOptions& opts = {});

struct OscillatoryPlan {
  std::vector<double> partition_points;
  int acceleration_order = 8;
};

/// int_a^inf f for integrands that alternate in sign between consecutive
/// partition points. [a, x_0] and every [x_i, x_{i+1}] are integrated with
/// the adaptive engine; the partial sums are accelerated by repeated
/// averaging (Euler transform) of order plan.acceleration_order. The error
/// estimate is the larger of the step-to-step and order-to-order changes of
/// the accelerated value plus the accumulated panel errors, and must be
/// below tol on two consecutive steps. Running out of partition points
/// reports converged = false.
QuadResult integrate_oscillatory_tail(const Integrand& f, double a, const OscillatoryPlan& plan, double tol);

}  // namespace fracperim::quadrature
