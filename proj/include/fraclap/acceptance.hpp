#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fraclap/quadrature.hpp"

namespace fraclap {

struct AcceptanceOptions {
  /// Restricts every σ grid to this single value when set; must lie in (0, 1/2).
  std::optional<double> sigma;
  bool parallel = false;
  QuadratureSpec quad = QuadratureSpec::from_environment();
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 10;

std::string criterion_name(int id);

/// Runs one acceptance criterion (1..10).
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

/// Runs all criteria in order, reporting each result as it completes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace fraclap
