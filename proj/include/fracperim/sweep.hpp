#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fracperim/order.hpp"

// Parameter sweeps over (dim, s, route) for the unit ball.

namespace fracperim::sweep {

enum class Route { Closed, Fourier, Spatial, Eigen, MonteCarlo };

/// "closed", "fourier", "spatial", "eigen", "montecarlo"; DomainError otherwise.
Route parse_route(std::string_view name);
const char* route_name(Route route);

struct RouteResult {
  double value = 0.0;
  /// Absolute error estimate (quadrature), standard error (Monte Carlo) or
  /// 0 (closed forms).
  double err = 0.0;
  bool converged = true;
  double seconds = 0.0;
};

struct RouteSettings {
  double tol = 1e-8;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  unsigned workers = 0;
};

/// P_s(B_1) through one route. Throws DomainError outside the route's range.
RouteResult ball_perimeter(Route route, const Order& order, const RouteSettings& settings);

struct SweepConfig {
  std::vector<int> dims;
  std::vector<double> s_values;
  std::vector<Route> routes;
  RouteSettings settings;
};

struct SweepRow {
  int dim;
  double s;
  Route route;
  double value;
  double err;
  double seconds;
  bool converged;
};

/// Throws DomainError for empty lists, tol <= 0, zero samples, or a cell
/// outside the range of its route.
void validate(const SweepConfig& config);

/// Rows in the order dims x s_values x routes. Deterministic cells run
/// concurrently; their values do not depend on the worker count.
std::vector<SweepRow> run(const SweepConfig& config);

/// Header `dim,s,route,value,err,seconds`, shortest round-trip numbers.
std::string to_csv(const std::vector<SweepRow>& rows);
/// Array of objects with the same keys.
std::string to_json(const std::vector<SweepRow>& rows);
/// Inverse of to_json (converged is not serialized and reads back true).
std::vector<SweepRow> from_json(const std::string& text);

/// Shortest decimal string that reads back to the same double.
std::string format_number(double v);

}  // namespace fracperim::sweep
