#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fracperim/order.hpp"
#include "fracperim/shapes.hpp"

namespace fracperim::isoperimetry {

/// perimeter / volume^((N-2s)/N). Throws DomainError for non-positive input.
double quotient(double perimeter, double volume, const Order& order);

/// Significance of a deficit measured in standard errors z: positive or
/// negative beyond 3, compatible with zero below 1, inconclusive in between.
enum class Verdict { Positive, Negative, Compatible, Inconclusive };

Verdict classify(double z);
const char* verdict_name(Verdict v);

struct QuotientReport {
  shapes::ShapeSpec shape;
  Order order;
  double perimeter = 0.0;
  double perimeter_std_error = 0.0;
  double volume = 0.0;
  double quotient = 0.0;
  double quotient_std_error = 0.0;
  /// quotient - best_constant(order)
  double deficit = 0.0;
  /// deficit / quotient_std_error (0 when the error is 0 and the deficit is 0)
  double z = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

/// Monte Carlo perimeter of `shape` turned into a quotient and compared with
/// the ball's.
QuotientReport deficit(const shapes::ShapeSpec& shape, const Order& order, std::uint64_t samples, std::uint64_t seed,
                       unsigned workers = 0);

struct LimitRow {
  double s;
  double value;
};

struct LimitTable {
  std::vector<LimitRow> rows;
  /// Ordinary least-squares line through the (up to) three rows nearest the
  /// endpoint, evaluated at the endpoint; absent for a single row. A
  /// diagnostic, not an error-bounded extrapolation.
  std::optional<double> extrapolated;
  /// The closed-form limit.
  double target = 0.0;
  /// Independent closed form of the same limit (s -> 1/2 only).
  std::optional<double> comparison;
  /// Distance of the rows to the target shrinks towards the endpoint.
  bool monotone = true;
};

inline const std::vector<double> kDefaultZeroGrid{1e-3, 2e-3, 4e-3};
inline const std::vector<double> kDefaultHalfGrid{0.496, 0.498, 0.499};

/// Rows (s, s * best_constant), extrapolated to s = 0. The grid must be
/// sorted, non-empty and inside (0, 1/2).
LimitTable limit_sweep_zero(int dim, const std::vector<double>& s_grid = kDefaultZeroGrid);

/// Rows (s, (1-2s) * P_s(B_1)), extrapolated to s = 1/2.
LimitTable limit_sweep_half(int dim, const std::vector<double>& s_grid = kDefaultHalfGrid);

}  // namespace fracperim::isoperimetry
