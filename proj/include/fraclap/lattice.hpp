#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fraclap/kernel.hpp"
#include "fraclap/tail_sums.hpp"

namespace fraclap {

/// Finitely supported real function on ℤ: strictly increasing support with
/// matching values; zero off the support.
class LatticeFunction {
 public:
  LatticeFunction() = default;
  LatticeFunction(std::vector<long> support, std::vector<double> values);

  static LatticeFunction indicator(long x, double value = 1.0);
  /// Values on [lo, hi] drawn from mt19937_64(seed):
  /// v = -1 + 2·(draw >> 11)·2^{-53}, one draw per point from lo upward.
  static LatticeFunction random(std::uint64_t seed, long lo, long hi);
  /// Samples f on [lo, hi].
  static LatticeFunction sample(const std::function<double(long)>& f, long lo, long hi);

  double operator()(long x) const;
  const std::vector<long>& support() const { return support_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return support_.size(); }
  bool empty() const { return support_.empty(); }
  /// max |x| over the support (0 if empty).
  long radius() const;
  bool is_even() const;

  LatticeFunction shifted(long k) const;
  LatticeFunction scaled(double c) const;
  LatticeFunction multiplied(const std::function<double(long)>& g) const;
  LatticeFunction plus(const LatticeFunction& other) const;

 private:
  std::vector<long> support_;
  std::vector<double> values_;
};

/// Function on ℤ with a certified bound |u(x)| <= C(1+|x|)^d. An optional
/// series describes u exactly for large |x|.
class DecayFunction {
 public:
  /// Spot-checks the certificate at 20 points; CertificationError on failure.
  DecayFunction(std::function<double(long)> eval, double decay_exponent, double bound_constant,
                double relative_accuracy = 0.0, std::optional<PowerTail> tail = std::nullopt);

  /// u = κ_α with d = -1 - 2α and C = max(1.5·asymptotic constant, sup of
  /// |κ_α(x)|(1+|x|)^{-d} over |x| <= 100).
  static DecayFunction from_kernel(const KernelEvaluator& kernel);
  static DecayFunction constant(double c);

  double operator()(long x) const { return eval_(x); }
  double decay_exponent() const { return decay_exponent_; }
  double bound_constant() const { return bound_constant_; }
  double relative_accuracy() const { return relative_accuracy_; }
  const std::optional<PowerTail>& tail() const { return tail_; }

  /// Throws CertificationError unless d < 2s, i.e. u lies in
  /// ℓ¹(ℤ, (1+|x|)^{-1-2s}); s may be negative.
  void require_membership(double s) const;

 private:
  std::function<double(long)> eval_;
  double decay_exponent_;
  double bound_constant_;
  double relative_accuracy_;
  std::optional<PowerTail> tail_;
};

}  // namespace fraclap
