#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fracperim/closed_form.hpp"
#include "fracperim/errors.hpp"
#include "fracperim/monte_carlo.hpp"
#include "fracperim/shapes.hpp"
#include "fracperim/sweep.hpp"
#include "fracperim/verification.hpp"

// Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
// 3 numerical non-convergence.

namespace {

using namespace fracperim;
using sweep::format_number;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kNoConvergence = 3;

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<sweep::Route> parse_routes(const std::string& text) {
  std::vector<sweep::Route> routes;
  for (const auto& name : split(text)) routes.push_back(sweep::parse_route(name));
  if (routes.empty()) throw DomainError("no routes given");
  return routes;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw DomainError("unsupported --format '" + format + "'");
}

struct ConstantArgs {
  int dim = 2;
  double s = 0.25;
  std::string format = "table";
};

int cmd_constant(const ConstantArgs& a) {
  require_format(a.format, {"table", "json"});
  const auto r = closed_form::constant_report(Order(a.dim, a.s));
  const std::vector<std::pair<const char*, double>> fields{{"best_constant", r.best_constant},
                                                           {"ball_perimeter", r.ball_perimeter},
                                                           {"lambda1_star", r.lambda1_star},
                                                           {"lambda1_s", r.lambda1_s},
                                                           {"cos_kernel", r.cos_kernel}};
  if (a.format == "json") {
    nlohmann::json out{{"dim", a.dim}, {"s", a.s}};
    for (const auto& [k, v] : fields) out[k] = v;
    std::cout << out.dump() << '\n';
  } else {
    for (const auto& [k, v] : fields) std::cout << std::left << std::setw(16) << k << format_number(v) << '\n';
  }
  return kOk;
}

struct PerimeterArgs {
  std::string shape = "ball";
  std::optional<int> dim;
  double s = 0.25;
  std::optional<std::string> route;
  double radius = 1.0;
  double side = 1.0;
  std::string axes;
  double r0 = 0.5;
  double r1 = 1.0;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  std::string format = "table";
};

shapes::ShapeSpec make_shape(const PerimeterArgs& a) {
  if (a.shape == "ellipsoid") {
    std::vector<double> axes;
    for (const auto& item : split(a.axes)) axes.push_back(std::stod(item));
    if (axes.empty()) throw DomainError("--axes is required for an ellipsoid");
    if (a.dim && *a.dim != static_cast<int>(axes.size())) throw DomainError("--dim does not match the number of --axes");
    return shapes::ShapeSpec::ellipsoid(axes);
  }
  const int dim = a.dim.value_or(2);
  if (a.shape == "ball") return shapes::ShapeSpec::ball(dim, a.radius);
  if (a.shape == "cube") return shapes::ShapeSpec::cube(dim, a.side);
  if (a.shape == "annulus") return shapes::ShapeSpec::annulus(dim, a.r0, a.r1);
  throw DomainError("unknown shape '" + a.shape + "' (expected ball, cube, ellipsoid, annulus)");
}

int cmd_perimeter(const PerimeterArgs& a) {
  require_format(a.format, {"table", "json"});
  if (!(a.tol > 0.0)) throw DomainError("tolerance must be positive");
  const auto shape = make_shape(a);
  const bool ball = shape.kind() == shapes::ShapeKind::Ball;
  const auto routes = parse_routes(a.route.value_or(ball ? "closed" : "montecarlo"));
  const Order order(shape.dim(), a.s);
  for (auto r : routes) {
    if (!ball && r != sweep::Route::MonteCarlo) {
      throw DomainError(std::string("route ") + sweep::route_name(r) + " is only available for balls");
    }
  }

  const sweep::RouteSettings settings{.tol = a.tol, .samples = a.samples, .seed = a.seed};
  bool converged = true;
  auto json = nlohmann::json::array();
  for (auto r : routes) {
    sweep::RouteResult res;
    if (r == sweep::Route::MonteCarlo) {
      const auto start = std::chrono::steady_clock::now();
      const auto est = monte_carlo::mc_perimeter(shape, a.s, a.samples, a.seed);
      res = {est.value, est.std_error, est.converged,
             std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
    } else {
      // P_s(R B) = R^(N-2s) P_s(B)
      res = sweep::ball_perimeter(r, order, settings);
      const double scale = std::pow(shape.radius(), shape.dim() - 2.0 * a.s);
      res.value *= scale;
      res.err *= scale;
    }
    converged = converged && res.converged;
    const char* err_kind = r == sweep::Route::MonteCarlo ? "std_error" : "abs_error";
    if (a.format == "json") {
      json.push_back({{"shape", shape.describe()},
                      {"s", a.s},
                      {"route", sweep::route_name(r)},
                      {"value", res.value},
                      {err_kind, res.err},
                      {"seconds", res.seconds},
                      {"converged", res.converged}});
    } else {
      std::cout << shape.describe() << " s=" << format_number(a.s) << " route=" << sweep::route_name(r)
                << " value=" << format_number(res.value) << ' ' << err_kind << '=' << format_number(res.err)
                << " seconds=" << format_number(res.seconds) << (res.converged ? "" : " NOT CONVERGED") << std::endl;
    }
  }
  if (a.format == "json") std::cout << json.dump() << std::endl;
  return converged ? kOk : kNoConvergence;
}

struct VerifyArgs {
  std::string suite = "all";
  bool quick = false;
};

int cmd_verify(const VerifyArgs& a) {
  const auto criteria = verification::run_suite(a.suite, a.quick);
  std::cout << verification::summary_json(a.suite, a.quick, criteria) << std::flush;
  bool ok = true;
  for (const auto& c : criteria) {
    ok = ok && c.passed();
    for (const auto& k : c.checks) {
      if (k.passed) continue;
      std::cerr << "FAIL " << c.id << ": " << k.name << ": measured " << format_number(k.measured) << ", expected "
                << format_number(k.expected) << ", " << k.relation << ' ' << format_number(k.tolerance) << '\n';
    }
  }
  return ok ? kOk : kVerifyFailed;
}

struct SweepArgs {
  std::vector<int> dims{2};
  std::vector<double> s_values;
  std::string routes = "closed";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  std::string format = "csv";
  std::string out;
};

int cmd_sweep(const SweepArgs& a) {
  require_format(a.format, {"csv", "json"});
  sweep::SweepConfig config;
  config.dims = a.dims;
  config.s_values = a.s_values;
  config.routes = parse_routes(a.routes);
  config.settings = {.tol = a.tol, .samples = a.samples, .seed = a.seed};
  sweep::validate(config);
  const auto rows = sweep::run(config);
  const std::string text = a.format == "json" ? sweep::to_json(rows) : sweep::to_csv(rows);
  if (a.out.empty()) {
    std::cout << text << std::flush;
  } else {
    std::ofstream file(a.out);
    file << text;
    if (!file) throw DomainError("cannot write " + a.out);
  }
  for (const auto& r : rows) {
    if (!r.converged) {
      std::cerr << "not converged: dim=" << r.dim << " s=" << format_number(r.s) << " route=" << sweep::route_name(r.route)
                << '\n';
      return kNoConvergence;
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional perimeters and the isoperimetric constant of the ball"};
  app.require_subcommand(1);

  ConstantArgs constant;
  auto* c = app.add_subcommand("constant", "Closed-form constants for (dim, s)");
  c->add_option("--dim", constant.dim, "Dimension N >= 2")->required();
  c->add_option("--s", constant.s, "Fractional order in (0, 1/2)")->required();
  c->add_option("--format", constant.format, "table or json");

  PerimeterArgs perimeter;
  auto* p = app.add_subcommand("perimeter", "s-perimeter of a shape through one or more routes");
  p->add_option("--shape", perimeter.shape, "ball, cube, ellipsoid or annulus");
  p->add_option("--dim", perimeter.dim, "Dimension N >= 2 (implied by --axes for ellipsoids)");
  p->add_option("--s", perimeter.s, "Fractional order in (0, 1/2)")->required();
  p->add_option("--route", perimeter.route, "Comma list of closed,fourier,spatial,eigen,montecarlo");
  p->add_option("--radius", perimeter.radius, "Ball radius");
  p->add_option("--side", perimeter.side, "Cube side");
  p->add_option("--axes", perimeter.axes, "Comma list of ellipsoid semi-axes");
  p->add_option("--r0", perimeter.r0, "Annulus inner radius");
  p->add_option("--r1", perimeter.r1, "Annulus outer radius");
  p->add_option("--samples", perimeter.samples, "Monte Carlo samples");
  p->add_option("--seed", perimeter.seed, "Monte Carlo seed");
  p->add_option("--tol", perimeter.tol, "Relative tolerance of the quadrature routes");
  p->add_option("--format", perimeter.format, "table or json");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run a verification suite");
  v->add_option("--suite", verify.suite, "weber, routes, limits, isoperimetric or all");
  v->add_flag("--quick", verify.quick, "Reduced grids and sample counts");

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "Ball perimeter over dims x s x routes");
  w->add_option("--dim", sw.dims, "Comma list of dimensions")->delimiter(',');
  w->add_option("--s", sw.s_values, "Comma list of orders")->delimiter(',')->required();
  w->add_option("--route", sw.routes, "Comma list of routes");
  w->add_option("--samples", sw.samples, "Monte Carlo samples");
  w->add_option("--seed", sw.seed, "Monte Carlo seed");
  w->add_option("--tol", sw.tol, "Relative tolerance of the quadrature routes");
  w->add_option("--format", sw.format, "csv or json");
  w->add_option("--out", sw.out, "Output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*c) return cmd_constant(constant);
    if (*p) return cmd_perimeter(perimeter);
    if (*v) return cmd_verify(verify);
    if (*w) return cmd_sweep(sw);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid number (" << e.what() << ")\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNoConvergence;
  }
  return kUsage;
}
