#include "fraclap/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#include "fraclap/errors.hpp"

namespace fraclap {

LatticeFunction::LatticeFunction(std::vector<long> support, std::vector<double> values)
    : support_(std::move(support)), values_(std::move(values)) {
  if (support_.size() != values_.size()) {
    throw DomainError("LatticeFunction: support and values differ in length");
  }
  for (std::size_t i = 1; i < support_.size(); ++i) {
    if (support_[i] <= support_[i - 1]) {
      throw DomainError("LatticeFunction: support must be strictly increasing");
    }
  }
}

LatticeFunction LatticeFunction::indicator(long x, double value) { return {{x}, {value}}; }

LatticeFunction LatticeFunction::random(std::uint64_t seed, long lo, long hi) {
  if (hi < lo) throw DomainError("LatticeFunction::random: empty range");
  std::mt19937_64 gen(seed);
  std::vector<long> support;
  std::vector<double> values;
  for (long x = lo; x <= hi; ++x) {
    support.push_back(x);
    values.push_back(-1.0 + 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53);
  }
  return {std::move(support), std::move(values)};
}

LatticeFunction LatticeFunction::sample(const std::function<double(long)>& f, long lo, long hi) {
  std::vector<long> support;
  std::vector<double> values;
  for (long x = lo; x <= hi; ++x) {
    support.push_back(x);
    values.push_back(f(x));
  }
  return {std::move(support), std::move(values)};
}

double LatticeFunction::operator()(long x) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), x);
  if (it == support_.end() || *it != x) return 0.0;
  return values_[static_cast<std::size_t>(it - support_.begin())];
}

long LatticeFunction::radius() const {
  if (support_.empty()) return 0;
  return std::max(std::labs(support_.front()), std::labs(support_.back()));
}

bool LatticeFunction::is_even() const {
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if ((*this)(-support_[i]) != values_[i]) return false;
  }
  return true;
}

LatticeFunction LatticeFunction::shifted(long k) const {
  std::vector<long> support = support_;
  for (long& x : support) x += k;
  return {std::move(support), values_};
}

LatticeFunction LatticeFunction::scaled(double c) const {
  std::vector<double> values = values_;
  for (double& v : values) v *= c;
  return {support_, std::move(values)};
}

LatticeFunction LatticeFunction::multiplied(const std::function<double(long)>& g) const {
  std::vector<double> values = values_;
  for (std::size_t i = 0; i < values.size(); ++i) values[i] *= g(support_[i]);
  return {support_, std::move(values)};
}

LatticeFunction LatticeFunction::plus(const LatticeFunction& other) const {
  std::vector<long> support;
  std::set_union(support_.begin(), support_.end(), other.support_.begin(), other.support_.end(),
                 std::back_inserter(support));
  std::vector<double> values;
  values.reserve(support.size());
  for (long x : support) values.push_back((*this)(x) + other(x));
  return {std::move(support), std::move(values)};
}

DecayFunction::DecayFunction(std::function<double(long)> eval, double decay_exponent,
                             double bound_constant, double relative_accuracy,
                             std::optional<PowerTail> tail)
    : eval_(std::move(eval)),
      decay_exponent_(decay_exponent),
      bound_constant_(bound_constant),
      relative_accuracy_(relative_accuracy),
      tail_(std::move(tail)) {
  if (!eval_) throw DomainError("DecayFunction: empty evaluator");
  if (!(bound_constant_ >= 0.0)) throw DomainError("DecayFunction: bound constant must be >= 0");
  double point = 1.0;
  for (int k = 0; k < 20; ++k) {
    const long x = (k % 2 == 0 ? 1 : -1) * (k == 0 ? 0 : std::lround(point));
    const double allowed = bound_constant_ * std::pow(1.0 + std::labs(x), decay_exponent_);
    if (std::abs(eval_(x)) > allowed * (1.0 + 1e-12)) {
      throw CertificationError("DecayFunction: |u(" + std::to_string(x) + ")| exceeds C(1+|x|)^d");
    }
    point *= 1.9;
  }
}

DecayFunction DecayFunction::from_kernel(const KernelEvaluator& kernel) {
  const double alpha = kernel.order().alpha();
  if (kernel.order().is_zero()) throw DomainError("DecayFunction::from_kernel: order must be nonzero");
  const double d = -1.0 - 2.0 * alpha;
  double c = 1.5 * asymptotic_constant(kernel.order());
  for (long x = 0; x <= 100; ++x) c = std::max(c, kernel(x) * std::pow(1.0 + x, -d));
  return DecayFunction([kernel](long x) { return kernel(x); }, d, c, kernel.relative_accuracy(),
                       kernel.power_tail(KernelExpansion::kMinArgument));
}

DecayFunction DecayFunction::constant(double c) {
  PowerTail tail;
  tail.coefficients = {c};
  tail.exponents = {0.0};
  return DecayFunction([c](long) { return c; }, 0.0, std::abs(c), 0.0, tail);
}

void DecayFunction::require_membership(double s) const {
  if (!(decay_exponent_ < 2.0 * s)) {
    throw CertificationError("decay exponent " + std::to_string(decay_exponent_) +
                             " does not place the function in the weighted l1 space of order " +
                             std::to_string(s));
  }
}

}  // namespace fraclap
