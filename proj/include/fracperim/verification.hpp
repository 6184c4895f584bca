#pragma once

#include <string>
#include <string_view>
#include <vector>

// Named cross-checks of the library, grouped into suites. Each criterion
// records every individual comparison with its measured value, expected
// value and tolerance.

namespace fracperim::verification {

struct Check {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  /// How `tolerance` is applied, e.g. "rel <=", "abs <=", "<".
  std::string relation;
  bool passed = false;
};

struct Criterion {
  std::string id;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
  std::size_t failures() const;
};

/// `quick` shrinks grids and sample counts.
Criterion eigen_chain(bool quick);
Criterion fourier_agreement(bool quick);
Criterion weber_oracle(bool quick);
Criterion spatial_agreement(bool quick);
Criterion mc_unbiased(bool quick);
Criterion isoperimetric_deficits(bool quick);
Criterion scale_invariance(bool quick);
Criterion endpoint_limits(bool quick);
Criterion divergence_guard(bool quick);
Criterion determinism(bool quick);

/// "weber", "routes", "limits", "isoperimetric" or "all"; DomainError
/// otherwise.
std::vector<Criterion> run_suite(std::string_view suite, bool quick);

/// {"suite", "quick", "passed", "criteria": [...]} with every check.
std::string summary_json(std::string_view suite, bool quick, const std::vector<Criterion>& criteria);

}  // namespace fracperim::verification
