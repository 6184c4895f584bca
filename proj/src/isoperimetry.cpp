#include "fracperim/isoperimetry.hpp"

#include <algorithm>
#include <cmath>

#include "fracperim/closed_form.hpp"
#include "fracperim/errors.hpp"
#include "fracperim/monte_carlo.hpp"

namespace fracperim::isoperimetry {

namespace {

void require_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("the s grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end())) throw DomainError("the s grid must be sorted");
  for (double s : grid) {
    if (!(s > 0.0 && s < 0.5)) throw DomainError("grid values of s must lie in (0, 1/2)");
  }
}

// Least-squares line through (x_i, y_i), evaluated at x = 0.
double intercept(const std::vector<LimitRow>& rows, double endpoint) {
  double mx = 0.0, my = 0.0;
  for (const auto& r : rows) {
    mx += r.s - endpoint;
    my += r.value;
  }
  mx /= rows.size();
  my /= rows.size();
  double sxy = 0.0, sxx = 0.0;
  for (const auto& r : rows) {
    const double dx = r.s - endpoint - mx;
    sxy += dx * (r.value - my);
    sxx += dx * dx;
  }
  return my - sxy / sxx * mx;
}

// `rows` sorted by s; `near_high` says the endpoint lies above the grid.
LimitTable finish(std::vector<LimitRow> rows, double endpoint, bool near_high, double target) {
  LimitTable table;
  table.target = target;
  if (rows.size() >= 2) {
    const std::size_t k = std::min<std::size_t>(3, rows.size());
    std::vector<LimitRow> fit = near_high ? std::vector<LimitRow>(rows.end() - k, rows.end())
                                          : std::vector<LimitRow>(rows.begin(), rows.begin() + k);
    table.extrapolated = intercept(fit, endpoint);
  }
  // Walk from the far end towards the endpoint.
  double previous = HUGE_VAL;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = near_high ? rows[i] : rows[rows.size() - 1 - i];
    const double gap = std::fabs(r.value - target);
    if (gap > previous) table.monotone = false;
    previous = gap;
  }
  table.rows = std::move(rows);
  return table;
}

}  // namespace

double quotient(double perimeter, double volume, const Order& order) {
  if (!(perimeter > 0.0) || !(volume > 0.0)) throw DomainError("perimeter and volume must be positive");
  return perimeter / std::pow(volume, order.volume_exponent());
}

Verdict classify(double z) {
  if (z > 3.0) return Verdict::Positive;
  if (z < -3.0) return Verdict::Negative;
  if (std::fabs(z) < 1.0) return Verdict::Compatible;
  return Verdict::Inconclusive;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Positive:
      return "positive";
    case Verdict::Negative:
      return "negative";
    case Verdict::Compatible:
      return "compatible";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

QuotientReport deficit(const shapes::ShapeSpec& shape, const Order& order, std::uint64_t samples, std::uint64_t seed,
                       unsigned workers) {
  if (shape.dim() != order.dim()) throw DomainError("shape and order have different dimensions");
  const auto est = monte_carlo::mc_perimeter(shape, order.s(), samples, seed, {.workers = workers});
  QuotientReport r{.shape = shape, .order = order};
  r.perimeter = est.value;
  r.perimeter_std_error = est.std_error;
  r.volume = shape.volume();
  r.quotient = quotient(r.perimeter, r.volume, order);
  r.quotient_std_error = r.quotient * est.std_error / est.value;
  r.deficit = r.quotient - closed_form::best_constant(order);
  r.z = r.quotient_std_error > 0.0 ? r.deficit / r.quotient_std_error : (r.deficit == 0.0 ? 0.0 : HUGE_VAL * r.deficit);
  r.verdict = classify(r.z);
  return r;
}

LimitTable limit_sweep_zero(int dim, const std::vector<double>& s_grid) {
  require_dimension(dim);
  require_grid(s_grid);
  std::vector<LimitRow> rows;
  for (double s : s_grid) rows.push_back({s, s * closed_form::best_constant(Order(dim, s))});
  return finish(std::move(rows), 0.0, false, closed_form::limit_s_to_zero(dim));
}

LimitTable limit_sweep_half(int dim, const std::vector<double>& s_grid) {
  require_dimension(dim);
  require_grid(s_grid);
  std::vector<LimitRow> rows;
  for (double s : s_grid) rows.push_back({s, (1.0 - 2.0 * s) * closed_form::ball_perimeter_closed(Order(dim, s))});
  auto table = finish(std::move(rows), 0.5, true, closed_form::limit_s_to_half(dim));
  table.comparison = closed_form::limit_s_to_half_projection(dim);
  return table;
}

}  // namespace fracperim::isoperimetry
