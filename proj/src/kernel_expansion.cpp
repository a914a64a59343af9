#include <cmath>
#include <numbers>
#include <vector>

#include "fraclap/kernel.hpp"
#include "fraclap/specfun.hpp"

namespace fraclap {
namespace {

constexpr int kTerms = 30;

// Taylor coefficients in v = u² of (sin u / u)^{2α}.
std::vector<double> sinc_power_coefficients(double alpha, int terms) {
  std::vector<double> s(terms);
  double factorial = 1.0;
  for (int k = 0; k < terms; ++k) {
    if (k > 0) factorial *= (2.0 * k) * (2.0 * k + 1.0);
    s[k] = (k % 2 == 0 ? 1.0 : -1.0) / factorial;
  }
  // log(sin u / u) = Σ l_k v^k
  std::vector<double> l(terms, 0.0);
  for (int k = 1; k < terms; ++k) {
    double acc = k * s[k];
    for (int j = 1; j < k; ++j) acc -= j * l[j] * s[k - j];
    l[k] = acc / k;
  }
  std::vector<double> g(terms, 0.0);
  g[0] = 1.0;
  for (int k = 1; k < terms; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * l[j] * g[k - j];
    g[k] = 2.0 * alpha * acc / k;
  }
  return g;
}

}  // namespace

KernelExpansion::KernelExpansion(const KernelOrder& order) : alpha_(order.alpha()) {
  const std::vector<double> g = sinc_power_coefficients(alpha_, kTerms);
  const double front = std::abs(std::sin(std::numbers::pi * alpha_)) / std::numbers::pi;
  coefficients_.resize(kTerms);
  double quarter_power = 1.0;
  for (int k = 0; k < kTerms; ++k) {
    const double a_k = g[k] * quarter_power;
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    coefficients_[k] = front * sign * a_k * std::exp(specfun::log_gamma(2.0 * alpha_ + 2.0 * k + 1.0));
    quarter_power *= 0.25;
  }
}

double KernelExpansion::operator()(double x) const {
  x = std::abs(x);
  const double inv2 = 1.0 / (x * x);
  double sum = coefficients_[0];
  double power = 1.0;
  double previous = std::abs(coefficients_[0]);
  for (std::size_t k = 1; k < coefficients_.size(); ++k) {
    power *= inv2;
    const double term = coefficients_[k] * power;
    const double magnitude = std::abs(term);
    if (magnitude > previous) break;
    sum += term;
    if (magnitude < 1e-18 * std::abs(sum)) break;
    previous = magnitude;
  }
  return sum * std::pow(x, -(1.0 + 2.0 * alpha_));
}

PowerTail KernelExpansion::power_tail(double valid_from) const {
  PowerTail tail;
  tail.valid_from = std::max(valid_from, kMinArgument);
  const double inv2 = 1.0 / (tail.valid_from * tail.valid_from);
  double power = 1.0;
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    tail.coefficients.push_back(coefficients_[k]);
    tail.exponents.push_back(1.0 + 2.0 * alpha_ + 2.0 * static_cast<double>(k));
    if (k > 0 && std::abs(coefficients_[k] * power) < 1e-18 * std::abs(coefficients_[0])) break;
    power *= inv2;
  }
  return tail;
}

}  // namespace fraclap
