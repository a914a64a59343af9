#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace fraclap {

/// A computed value with an upper bound on its absolute error.
struct Estimate {
  double value = 0.0;
  double err_bound = 0.0;
};

/// Running sum that also tracks Σ|term| for a rounding-error bound.
struct SumAccumulator {
  double sum = 0.0;
  double abs_sum = 0.0;
  std::size_t count = 0;

  void add(double term) {
    sum += term;
    abs_sum += std::abs(term);
    ++count;
  }
  /// Adds an independently accumulated partial sum; the count becomes a
  /// bound on the depth of the combined summation.
  void merge(const SumAccumulator& other) {
    sum += other.sum;
    abs_sum += other.abs_sum;
    count = std::max(count, other.count) + 1;
  }
  /// γ_n·Σ|term| with γ_n = n·u/(1 - n·u), the classical bound for recursive summation.
  double rounding_bound() const {
    const double nu = static_cast<double>(count + 1) * std::numeric_limits<double>::epsilon() * 0.5;
    return nu / (1.0 - nu) * abs_sum;
  }
};

}  // namespace fraclap
