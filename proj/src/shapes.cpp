#include "fracperim/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fracperim/errors.hpp"
#include "fracperim/order.hpp"
#include "fracperim/specfun.hpp"

namespace fracperim::shapes {

namespace {

double norm(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return std::sqrt(sum);
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

// Closest boundary point of an ellipsoid to an interior point p (all
// coordinates taken non-negative). With u = t + a_min^2 the Lagrange
// condition reads F(u) = sum (a_i p_i / (a_i^2 - a_min^2 + u))^2 = 1, F
// decreasing on (0, inf). The root is bracketed in log u so that tiny u
// (points near the longest-axis plane) keep full relative precision.
double ellipsoid_distance(const std::vector<double>& axes, std::span<const double> x) {
  const std::size_t n = axes.size();
  const double amin = *std::min_element(axes.begin(), axes.end());
  const double amin2 = amin * amin;
  std::vector<double> p(n), gap(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = std::fabs(x[i]);
    gap[i] = (axes[i] - amin) * (axes[i] + amin);
  }
  auto F = [&](double u) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double q = axes[i] * p[i] / (gap[i] + u);
      sum += q * q;
    }
    return sum - 1.0;
  };

  double log_lo = std::log(amin2) - 690.0;
  double log_hi = std::log(amin2);
  const bool degenerate = !(F(std::exp(log_lo)) > 0.0);
  if (!degenerate) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (log_lo + log_hi);
      if (mid <= log_lo || mid >= log_hi) break;
      (F(std::exp(mid)) > 0.0 ? log_lo : log_hi) = mid;
    }
  }
  const double u = std::exp(degenerate ? log_lo : 0.5 * (log_lo + log_hi));

  double dist2 = 0.0;
  double used = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = axes[i] * axes[i] * p[i] / (gap[i] + u);
    used += (y / axes[i]) * (y / axes[i]);
    dist2 += (p[i] - y) * (p[i] - y);
  }
  if (degenerate && used < 1.0) {
    // The closest point leaves the plane of the shortest axes; the missing
    // part of the constraint is taken up there.
    const double rho = amin * std::sqrt(1.0 - used);
    dist2 += rho * rho;
  }
  return std::sqrt(dist2);
}

}  // namespace

const char* kind_name(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Ball:
      return "ball";
    case ShapeKind::Cube:
      return "cube";
    case ShapeKind::Ellipsoid:
      return "ellipsoid";
    case ShapeKind::Annulus:
      return "annulus";
  }
  return "unknown";
}

ShapeSpec::ShapeSpec(ShapeKind kind, int dim, double a, double b, std::vector<double> axes)
    : kind_(kind), dim_(dim), a_(a), b_(b), axes_(std::move(axes)) {}

ShapeSpec ShapeSpec::ball(int dim, double radius) {
  require_dimension(dim);
  require_positive(radius, "ball radius");
  return ShapeSpec(ShapeKind::Ball, dim, radius, 0.0, {});
}

ShapeSpec ShapeSpec::cube(int dim, double side) {
  require_dimension(dim);
  require_positive(side, "cube side");
  return ShapeSpec(ShapeKind::Cube, dim, side, 0.0, {});
}

ShapeSpec ShapeSpec::ellipsoid(std::vector<double> semi_axes) {
  require_dimension(static_cast<int>(semi_axes.size()));
  for (double a : semi_axes) require_positive(a, "ellipsoid semi-axis");
  const int dim = static_cast<int>(semi_axes.size());
  return ShapeSpec(ShapeKind::Ellipsoid, dim, 0.0, 0.0, std::move(semi_axes));
}

ShapeSpec ShapeSpec::annulus(int dim, double r0, double r1) {
  require_dimension(dim);
  require_positive(r0, "annulus inner radius");
  require_positive(r1, "annulus outer radius");
  if (!(r0 < r1)) throw DomainError("annulus requires r0 < r1");
  return ShapeSpec(ShapeKind::Annulus, dim, r0, r1, {});
}

double ShapeSpec::volume() const {
  const double omega = specfun::ball_volume(dim_);
  switch (kind_) {
    case ShapeKind::Ball:
      return omega * std::pow(a_, dim_);
    case ShapeKind::Cube:
      return std::pow(a_, dim_);
    case ShapeKind::Ellipsoid:
      return omega * std::accumulate(axes_.begin(), axes_.end(), 1.0, std::multiplies<>());
    case ShapeKind::Annulus:
      return omega * (std::pow(b_, dim_) - std::pow(a_, dim_));
  }
  return 0.0;
}

double ShapeSpec::diameter() const {
  switch (kind_) {
    case ShapeKind::Ball:
      return 2.0 * a_;
    case ShapeKind::Cube:
      return a_ * std::sqrt(static_cast<double>(dim_));
    case ShapeKind::Ellipsoid:
      return 2.0 * *std::max_element(axes_.begin(), axes_.end());
    case ShapeKind::Annulus:
      return 2.0 * b_;
  }
  return 0.0;
}

bool ShapeSpec::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw DomainError("point dimension does not match the shape");
  switch (kind_) {
    case ShapeKind::Ball:
      return norm(x) < a_;
    case ShapeKind::Cube:
      return std::all_of(x.begin(), x.end(), [this](double v) { return std::fabs(v) < 0.5 * a_; });
    case ShapeKind::Ellipsoid: {
      double sum = 0.0;
      for (int i = 0; i < dim_; ++i) sum += (x[i] / axes_[i]) * (x[i] / axes_[i]);
      return sum < 1.0;
    }
    case ShapeKind::Annulus: {
      const double r = norm(x);
      return r > a_ && r < b_;
    }
  }
  return false;
}

double ShapeSpec::distance_to_boundary(std::span<const double> x) const {
  if (!contains(x)) throw DomainError("distance_to_boundary needs a point inside the shape");
  switch (kind_) {
    case ShapeKind::Ball:
      return a_ - norm(x);
    case ShapeKind::Cube: {
      double d = 0.5 * a_;
      for (double v : x) d = std::min(d, 0.5 * a_ - std::fabs(v));
      return d;
    }
    case ShapeKind::Ellipsoid: {
      const double d = ellipsoid_distance(axes_, x);
      const double scale = *std::min_element(axes_.begin(), axes_.end());
      return std::max(0.0, d * (1.0 - 1e-12) - 1e-15 * scale);
    }
    case ShapeKind::Annulus: {
      const double r = norm(x);
      return std::min(r - a_, b_ - r);
    }
  }
  return 0.0;
}

std::string ShapeSpec::describe() const {
  std::ostringstream out;
  out << kind_name(kind_) << "(N=" << dim_;
  switch (kind_) {
    case ShapeKind::Ball:
      out << ", R=" << a_;
      break;
    case ShapeKind::Cube:
      out << ", side=" << a_;
      break;
    case ShapeKind::Ellipsoid:
      out << ", axes=";
      for (std::size_t i = 0; i < axes_.size(); ++i) out << (i ? "," : "") << axes_[i];
      break;
    case ShapeKind::Annulus:
      out << ", r0=" << a_ << ", r1=" << b_;
      break;
  }
  out << ")";
  return out.str();
}

}  // namespace fracperim::shapes
