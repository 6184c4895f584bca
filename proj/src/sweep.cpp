#include "fracperim/sweep.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <json.hpp>

#include "fracperim/closed_form.hpp"
#include "fracperim/errors.hpp"
#include "fracperim/fourier_route.hpp"
#include "fracperim/monte_carlo.hpp"
#include "fracperim/parallel.hpp"
#include "fracperim/shapes.hpp"
#include "fracperim/spatial_route.hpp"

namespace fracperim::sweep {

namespace {

constexpr std::array<std::pair<Route, const char*>, 5> kNames{{{Route::Closed, "closed"},
                                                               {Route::Fourier, "fourier"},
                                                               {Route::Spatial, "spatial"},
                                                               {Route::Eigen, "eigen"},
                                                               {Route::MonteCarlo, "montecarlo"}}};

bool deterministic(Route r) { return r != Route::MonteCarlo; }

void check_cell(Route route, const Order& order) {
  if (route == Route::Fourier || route == Route::Spatial) require_numeric_order(order);
}

}  // namespace

Route parse_route(std::string_view name) {
  for (const auto& [route, text] : kNames) {
    if (name == text) return route;
  }
  throw DomainError("unknown route '" + std::string(name) + "' (expected closed, fourier, spatial, eigen, montecarlo)");
}

const char* route_name(Route route) {
  for (const auto& [r, text] : kNames) {
    if (r == route) return text;
  }
  return "?";
}

RouteResult ball_perimeter(Route route, const Order& order, const RouteSettings& settings) {
  check_cell(route, order);
  const auto start = std::chrono::steady_clock::now();
  RouteResult out;
  switch (route) {
    case Route::Closed:
      out.value = closed_form::ball_perimeter_closed(order);
      break;
    case Route::Eigen:
      out.value = closed_form::ball_perimeter_via_eigenvalue(order);
      break;
    case Route::Fourier: {
      const auto r = fourier_route::ball_perimeter_fourier(order, settings.tol);
      out.value = r.perimeter;
      out.err = r.prefactor * r.radial_integral.abs_error_estimate;
      out.converged = r.radial_integral.converged;
      break;
    }
    case Route::Spatial: {
      const auto r = spatial_route::ball_perimeter_spatial(order, settings.tol);
      out.value = r.value;
      out.err = r.abs_error_estimate;
      out.converged = r.converged;
      break;
    }
    case Route::MonteCarlo: {
      const auto r = monte_carlo::mc_perimeter(shapes::ShapeSpec::ball(order.dim(), 1.0), order.s(), settings.samples,
                                               settings.seed, {.workers = settings.workers});
      out.value = r.value;
      out.err = r.std_error;
      out.converged = r.converged;
      break;
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void validate(const SweepConfig& config) {
  if (config.dims.empty()) throw DomainError("no dimensions given");
  if (config.s_values.empty()) throw DomainError("no values of s given");
  if (config.routes.empty()) throw DomainError("no routes given");
  if (!(config.settings.tol > 0.0)) throw DomainError("tolerance must be positive");
  if (config.settings.samples < 2) throw DomainError("at least two Monte Carlo samples are needed");
  for (int n : config.dims) {
    for (double s : config.s_values) {
      const Order order(n, s);
      for (Route r : config.routes) check_cell(r, order);
    }
  }
}

std::vector<SweepRow> run(const SweepConfig& config) {
  validate(config);
  std::vector<SweepRow> rows;
  for (int n : config.dims) {
    for (double s : config.s_values) {
      for (Route r : config.routes) rows.push_back({n, s, r, 0.0, 0.0, 0.0, true});
    }
  }
  auto evaluate = [&](SweepRow& row, unsigned workers) {
    auto settings = config.settings;
    settings.workers = workers;
    const auto r = ball_perimeter(row.route, Order(row.dim, row.s), settings);
    row.value = r.value;
    row.err = r.err;
    row.seconds = r.seconds;
    row.converged = r.converged;
  };
  std::vector<std::size_t> quadrature_cells;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (deterministic(rows[i].route)) quadrature_cells.push_back(i);
  }
  parallel::for_each_index(
      quadrature_cells.size(), [&](std::size_t k) { evaluate(rows[quadrature_cells[k]], 1); },
      config.settings.workers);
  // Monte Carlo cells parallelize internally.
  for (auto& row : rows) {
    if (!deterministic(row.route)) evaluate(row, config.settings.workers);
  }
  return rows;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "dim,s,route,value,err,seconds\n";
  for (const auto& r : rows) {
    out += std::to_string(r.dim) + ',' + format_number(r.s) + ',' + route_name(r.route) + ',' + format_number(r.value) +
           ',' + format_number(r.err) + ',' + format_number(r.seconds) + '\n';
  }
  return out;
}

std::string to_json(const std::vector<SweepRow>& rows) {
  auto array = nlohmann::json::array();
  for (const auto& r : rows) {
    array.push_back({{"dim", r.dim},
                     {"s", r.s},
                     {"route", route_name(r.route)},
                     {"value", r.value},
                     {"err", r.err},
                     {"seconds", r.seconds}});
  }
  return array.dump(2) + '\n';
}

std::vector<SweepRow> from_json(const std::string& text) {
  std::vector<SweepRow> rows;
  for (const auto& o : nlohmann::json::parse(text)) {
    rows.push_back({o.at("dim").get<int>(), o.at("s").get<double>(), parse_route(o.at("route").get<std::string>()),
                    o.at("value").get<double>(), o.at("err").get<double>(), o.at("seconds").get<double>(), true});
  }
  return rows;
}

}  // namespace fracperim::sweep
