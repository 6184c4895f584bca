#pragma once

namespace fracperim {

/// Smallest and largest fractional orders accepted by the numerical routes.
/// Closed forms accept the whole open interval (0, 1/2).
inline constexpr double kMinNumericOrder = 1e-6;
inline constexpr double kMaxNumericOrder = 0.5 - 1e-6;

/// Ambient dimension N >= 2 together with a fractional order s in (0, 1/2).
/// The constructor rejects anything else, so every Order in circulation has
/// a finite s-perimeter for the unit ball.
class Order {
 public:
  Order(int dim, double s);

  int dim() const { return dim_; }
  double s() const { return s_; }

  /// (N - 2s) / N, the volume exponent of the isoperimetric quotient.
  double volume_exponent() const { return (dim_ - 2.0 * s_) / dim_; }

 private:
  int dim_;
  double s_;
};

/// Throws DomainError unless s lies in [kMinNumericOrder, kMaxNumericOrder].
void require_numeric_order(const Order& order);

/// Throws DomainError for N < 2.
void require_dimension(int dim);

}  // namespace fracperim
