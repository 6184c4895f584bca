#include "fracperim/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include "fracperim/errors.hpp"

namespace fracperim::quadrature {

namespace {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
// Odd indices are the Gauss abscissae.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452, 0.930157491355708226001207180059508,
    0.865063366688984510732096688423493, 0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784, 0.294392862701460198131126603103866,
    0.148874338981631210884826001129720, 0.000000000000000000000000000000000};
constexpr std::array<double, 5> kWg = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                                       0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                                       0.295524224714752870173892994651338};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390, 0.054755896574351996031381300244580,
    0.075039674810919952767043140916190, 0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707, 0.142775938577060080797094273138717,
    0.147739104901338491374841515972068, 0.149445554002916905664936468389821};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

bool operator<(const Panel& lhs, const Panel& rhs) { return lhs.error < rhs.error; }

double checked(double v, double x) {
  if (!std::isfinite(v)) throw DomainError("integrand is not finite at x = " + std::to_string(x));
  return v;
}

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f(center), center);
  double resk = fc * kWgk[10];
  double resg = 0.0;
  double resabs = std::fabs(resk);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = checked(f(center - dx), center - dx);
    f2[j] = checked(f(center + dx), center + dx);
    const double pair = f1[j] + f2[j];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::fabs(fc - mean);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));

  const double value = resk * half;
  resasc *= std::fabs(half);
  resabs *= std::fabs(half);
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > DBL_MIN / (50.0 * DBL_EPSILON)) err = std::max(50.0 * DBL_EPSILON * resabs, err);
  return {a, b, value, err};
}

void require_interval(double a, double b, double tol) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw DomainError("integration interval must satisfy a < b with finite endpoints");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
}

// Tanh-sinh on u in [0, 1] for a bounded integrand, in level-doubling form.
// The nodes u = 1/(1 + exp(-pi sinh t)) and 1 - u are both computed without
// cancellation; `g` receives u.
struct TanhSinhOutcome {
  double value;
  double error;
  std::size_t evaluations;
  bool converged;
};

template <class G>
TanhSinhOutcome tanh_sinh_unit(const G& g, double tol, double rel_tol, int max_levels) {
  constexpr double kTMax = 4.0;
  constexpr double kHalfPi = 0.5 * std::numbers::pi;
  std::size_t evals = 0;
  auto term = [&](double t) {
    const double e = std::exp(-std::numbers::pi * std::sinh(t));
    const double u = 1.0 / (1.0 + e);
    const double one_minus_u = e / (1.0 + e);
    const double w = 2.0 * kHalfPi * std::cosh(t) * u * one_minus_u;
    if (w == 0.0 || u == 0.0) return 0.0;
    ++evals;
    return w * checked(g(u), u);
  };

  double step = 1.0;
  double sum = term(0.0);
  for (int j = 1; j * step <= kTMax; ++j) sum += term(j * step) + term(-j * step);
  double estimate = step * sum;
  double prev_diff = INFINITY;
  for (int level = 1; level <= max_levels; ++level) {
    step *= 0.5;
    double fresh = 0.0;
    for (int j = 1; j * step <= kTMax; j += 2) fresh += term(j * step) + term(-j * step);
    sum += fresh;
    const double next = step * sum;
    const double diff = std::fabs(next - estimate);
    estimate = next;
    // The rule converges quadratically in the level, so the previous change
    // overestimates the error of the new value. Stop on two small changes.
    const double target = std::max(tol, rel_tol * std::fabs(estimate));
    if (level >= 3 && diff <= target && prev_diff <= 10.0 * target)
      return {estimate, diff, evals, true};
    prev_diff = diff;
  }
  return {estimate, prev_diff, evals, false};
}

// One half of the interval with the singular end at distance d = h u^beta.
template <class Weighted>
TanhSinhOutcome singular_half(const Weighted& weighted, double h, double p, double tol, const TanhSinhOptions& opts) {
  if (p < 0.0) {
    const double beta = 1.0 / (1.0 + p);
    const double scale = std::pow(h, 1.0 + p) / (1.0 + p);
    auto g = [&](double u) { return scale * weighted(h * std::pow(u, beta)); };
    return tanh_sinh_unit(g, tol, opts.rel_tol, opts.max_levels);
  }
  auto g = [&](double u) { return h * weighted(h * u); };
  return tanh_sinh_unit(g, tol, opts.rel_tol, opts.max_levels);
}

void require_exponents(SingularExponents e) {
  if (!(e.p > -1.0) || !(e.q > -1.0))
    throw DomainError("endpoint exponents must exceed -1 for an integrable singularity");
}

QuadResult combine(const TanhSinhOutcome& left, const TanhSinhOutcome& right) {
  return {left.value + right.value, left.error + right.error, left.evaluations + right.evaluations,
          left.converged && right.converged};
}

}  // namespace

QuadResult integrate_adaptive(const Integrand& f, double a, double b, double tol, const AdaptiveOptions& opts) {
  require_interval(a, b, tol);
  std::vector<Panel> heap;
  std::vector<Panel> frozen;
  heap.push_back(gauss_kronrod(f, a, b));
  std::size_t evaluations = 21;
  double value = heap.front().value;
  double error = heap.front().error;

  auto target = [&] { return std::max(tol, opts.rel_tol * std::fabs(value)); };
  while (error > target() && !heap.empty() && heap.size() + frozen.size() < opts.max_panels) {
    std::pop_heap(heap.begin(), heap.end());
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 1e-15 * std::max(std::fabs(worst.a), std::fabs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    evaluations += 42;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
  }

  // Re-sum in left-to-right order to shed the drift of the running totals.
  heap.insert(heap.end(), frozen.begin(), frozen.end());
  std::sort(heap.begin(), heap.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  value = 0.0;
  error = 0.0;
  for (const Panel& p : heap) {
    value += p.value;
    error += p.error;
  }
  return {value, error, evaluations, error <= target()};
}

QuadResult integrate_endpoint_singular(const DistanceIntegrand& f, double a, double b, SingularExponents exps,
                                       double tol, const TanhSinhOptions& opts) {
  require_interval(a, b, tol);
  require_exponents(exps);
  const double width = b - a;
  const double h = 0.5 * width;
  auto left = [&](double d) {
    if (exps.p < 0.0) d = std::max(d, DBL_MIN);
    const double v = f(a + d, d, width - d);
    return exps.p < 0.0 ? v * std::pow(d, -exps.p) : v;
  };
  auto right = [&](double d) {
    if (exps.q < 0.0) d = std::max(d, DBL_MIN);
    const double v = f(b - d, width - d, d);
    return exps.q < 0.0 ? v * std::pow(d, -exps.q) : v;
  };
  return combine(singular_half(left, h, exps.p, 0.5 * tol, opts), singular_half(right, h, exps.q, 0.5 * tol, opts));
}

QuadResult integrate_endpoint_singular(const Integrand& f, double a, double b, SingularExponents exps, double tol,
                                       const TanhSinhOptions& opts) {
  require_interval(a, b, tol);
  require_exponents(exps);
  const double h = 0.5 * (b - a);
  // Without exact distances the integrand can only be sampled at
  // representable points; below the last one the bounded factor f (x-a)^-p
  // is continued as a constant.
  auto left = [&](double d) {
    double x = a + d;
    if (x <= a) x = std::nextafter(a, b);
    const double v = f(x);
    return exps.p < 0.0 ? v * std::pow(x - a, -exps.p) : v;
  };
  auto right = [&](double d) {
    double x = b - d;
    if (x >= b) x = std::nextafter(b, a);
    const double v = f(x);
    return exps.q < 0.0 ? v * std::pow(b - x, -exps.q) : v;
  };
  return combine(singular_half(left, h, exps.p, 0.5 * tol, opts), singular_half(right, h, exps.q, 0.5 * tol, opts));
}

QuadResult integrate_oscillatory_tail(const Integrand& f, double a, const OscillatoryPlan& plan, double tol) {
  const auto& pts = plan.partition_points;
  const int order = plan.acceleration_order;
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (order < 1) throw DomainError("acceleration order must be positive");
  if (pts.empty() || !(pts.front() >= a)) throw DomainError("partition points must start at or after the lower limit");
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i] > pts[i - 1])) throw DomainError("partition points must be strictly increasing");

  // Panel tolerances are a small share of the budget so that the sum of all
  // panel errors stays well inside it.
  const double panel_tol = 0.25 * tol / static_cast<double>(pts.size());
  std::vector<double> partial;
  partial.reserve(pts.size());
  QuadResult result;
  double panel_error = 0.0;
  double running = 0.0;
  auto add_panel = [&](double lo, double hi) {
    if (hi > lo) {
      const QuadResult r = integrate_adaptive(f, lo, hi, panel_tol);
      running += r.value;
      panel_error += r.abs_error_estimate;
      result.evaluations += r.evaluations;
    }
    partial.push_back(running);
  };

  // Binomial weights of the repeated average, normalised to sum 1, applied to
  // offsets from the newest partial sum (a constant sequence stays exact).
  auto averaged = [&](std::size_t last, int k) {
    const double base = partial[last];
    double sum = 0.0;
    double c = 1.0;
    for (int i = 0; i < k; ++i) {
      sum += c * (partial[last - k + i] - base);
      c = c * (k - i) / (i + 1);
    }
    return base + std::ldexp(sum, -k);
  };

  add_panel(a, pts.front());
  bool previous_ok = false;
  double estimate = running;
  double change = INFINITY;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    add_panel(pts[i - 1], pts[i]);
    const std::size_t last = partial.size() - 1;
    if (last < static_cast<std::size_t>(order) + 1) continue;
    estimate = averaged(last, order);
    change = std::max(std::fabs(estimate - averaged(last - 1, order)), std::fabs(estimate - averaged(last, order - 1)));
    const bool ok = change + panel_error <= tol;
    if (ok && previous_ok) {
      result.value = estimate;
      result.abs_error_estimate = change + panel_error;
      result.converged = true;
      return result;
    }
    previous_ok = ok;
  }
  result.value = estimate;
  result.abs_error_estimate = change + panel_error;
  result.converged = false;
  return result;
}

}  // namespace fracperim::quadrature
