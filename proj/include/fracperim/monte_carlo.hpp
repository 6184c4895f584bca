#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fracperim/shapes.hpp"

// Monte Carlo estimate of P_s(E) = 2 int_E int_{E^c} |x-y|^(-N-2s) dy dx.
//
// x is drawn from the density d(x)^(-2s) / Z_E (d = distance to the
// complement), then y = x + r w with w uniform on the sphere and r from the
// Pareto density 2s d^(2s) r^(-1-2s) on (d, inf). Every point closer than
// d stays in E, so
//
//   P_s(E) = (Z_E sigma_{N-1} / s) * Prob[y outside E],
//
// and each sample contributes either 0 or Z_E sigma_{N-1} / s.

namespace fracperim::monte_carlo {

/// splitmix64 stream keyed by (seed, stream, index). Every sample owns its
/// stream, so results do not depend on how samples are spread over threads.
class CounterRng {
 public:
  using result_type = std::uint64_t;
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on (0, 1].
  double uniform();
  /// Uniform direction on the unit sphere S^(n-1).
  void direction(std::span<double> out);

 private:
  std::uint64_t state_;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  /// False when the normalizer stage could not be evaluated to tolerance.
  bool converged = true;
  double normalizer = 0.0;
  double hit_fraction = 0.0;
};

struct Normalizer {
  double value = 0.0;
  double std_error = 0.0;
  bool converged = true;
};

/// Z_E = int_E d(x)^(-2s) dx. Ball, annulus and cube reduce to 1D integrals
/// over the distance level sets (deterministic, std_error = 0); the
/// ellipsoid is mapped onto the unit ball and corrected by a nested Monte
/// Carlo average with its own error bar.
Normalizer importance_normalizer(const shapes::ShapeSpec& shape, double s, std::uint64_t nested_samples,
                                 std::uint64_t seed);

struct McOptions {
  unsigned workers = 0;  // 0: FRACPERIM_THREADS or hardware concurrency
};

/// Throws DomainError for s outside (0, 1/2) (for s >= 1/2 the normalizer
/// and the perimeter are infinite) and for fewer than two samples.
McEstimate mc_perimeter(const shapes::ShapeSpec& shape, double s, std::uint64_t samples, std::uint64_t seed,
                        const McOptions& options = {});

/// Pairwise summation in index order.
double pairwise_sum(std::span<const double> values);

}  // namespace fracperim::monte_carlo
