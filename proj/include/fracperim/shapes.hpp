#pragma once

#include <span>
#include <string>
#include <vector>

// Bounded test sets in R^N, all centred at the origin.

namespace fracperim::shapes {

enum class ShapeKind { Ball, Cube, Ellipsoid, Annulus };

class ShapeSpec {
 public:
  static ShapeSpec ball(int dim, double radius);
  static ShapeSpec cube(int dim, double side);
  /// Axis-aligned; the dimension is the number of semi-axes.
  static ShapeSpec ellipsoid(std::vector<double> semi_axes);
  /// Spherical shell r0 < |x| < r1.
  static ShapeSpec annulus(int dim, double r0, double r1);

  ShapeKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double radius() const { return a_; }
  double side() const { return a_; }
  double inner_radius() const { return a_; }
  double outer_radius() const { return b_; }
  const std::vector<double>& semi_axes() const { return axes_; }

  double volume() const;
  /// An upper bound on the distance between two points of the set.
  double diameter() const;
  bool contains(std::span<const double> x) const;

  /// Distance from an interior point to the complement. Exact for ball, cube
  /// and annulus; for the ellipsoid a lower bound within ~1e-12 relative of
  /// the true distance (the only approximate primitive). Throws DomainError
  /// for points outside the set.
  double distance_to_boundary(std::span<const double> x) const;

  std::string describe() const;

 private:
  ShapeSpec(ShapeKind kind, int dim, double a, double b, std::vector<double> axes);

  ShapeKind kind_;
  int dim_;
  double a_;  // radius, side or inner radius
  double b_;  // outer radius (annulus)
  std::vector<double> axes_;
};

const char* kind_name(ShapeKind kind);

}  // namespace fracperim::shapes
