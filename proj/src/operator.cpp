#include "fraclap/operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <mutex>
#include <string>
#include <utility>

#include "fraclap/errors.hpp"

namespace fraclap {
namespace {

constexpr double kEps = 2.220446049250313e-16;

void require_sigma(double sigma, const char* what) {
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw DomainError(std::string(what) + ": sigma must lie in (0,1), got " + std::to_string(sigma));
  }
}

// Σ_{|z|>R} |κ(z)| |u(x-z)| <= 2 C_κ C_u 2^{|d|} Σ_{z>R} z^{p} with p = -1-2β+d < -1.
double unmodelled_tail_bound(const KernelEvaluator& kernel, const DecayFunction& u, long x, long radius) {
  if (radius < 2 * std::labs(x) + 1) {
    throw DomainError("tail bound needs radius >= 2|x| + 1");
  }
  const double beta = kernel.order().alpha();
  const double d = u.decay_exponent();
  const double p = -1.0 - 2.0 * beta + d;
  if (!(p < -1.0)) throw CertificationError("tail sum does not converge for the given decay");
  const double c = certified_kernel_constant(kernel, radius);
  return 2.0 * c * u.bound_constant() * std::pow(2.0, std::abs(d)) *
         std::pow(static_cast<double>(radius), p + 1.0) / (-(p + 1.0));
}

}  // namespace

Estimate total_mass_estimate(double sigma, const QuadratureSpec& quad) {
  require_sigma(sigma, "total_mass");
  static std::mutex mutex;
  static std::map<std::pair<double, double>, Estimate> memo;
  const auto key = std::make_pair(sigma, quad.rel_tol);
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  auto integrand = [&](double theta) { return std::pow(2.0 * std::sin(0.5 * theta), 2.0 * sigma); };
  EndpointBehavior ends;
  ends.left_exponent = 2.0 * sigma;
  const QuadratureResult r = integrate(integrand, 0.0, std::numbers::pi, quad, ends);
  const Estimate e{r.value / std::numbers::pi, r.err_estimate / std::numbers::pi + 4.0 * kEps * std::abs(r.value)};
  std::lock_guard lock(mutex);
  memo.emplace(key, e);
  return e;
}

double certified_kernel_constant(const KernelEvaluator& kernel, long radius) {
  if (radius < 12) throw DomainError("certified_kernel_constant: radius must be >= 12");
  const double alpha = kernel.order().alpha();
  const double c = 1.5 * asymptotic_constant(kernel.order());
  for (long z : {radius, 2 * radius, 10 * radius}) {
    if (kernel(z) * std::pow(static_cast<double>(z), 1.0 + 2.0 * alpha) > c) {
      throw CertificationError("kernel constant violated at |z| = " + std::to_string(z));
    }
  }
  return c;
}

Estimate apply_fractional(double sigma, const LatticeFunction& f, long x, long radius,
                          const QuadratureSpec& quad) {
  require_sigma(sigma, "apply_fractional");
  if (radius < std::max(std::labs(x), f.radius()) + 10) {
    throw DomainError("apply_fractional: radius must be >= max(|x|, support radius) + 10");
  }
  const KernelEvaluator kernel = shared_evaluator(sigma, quad);
  const Estimate mass = total_mass_estimate(sigma, quad);
  const double fx = f(x);
  SumAccumulator acc;
  acc.add(fx * mass.value);
  double kernel_weighted = 0.0;
  const auto& support = f.support();
  const auto& values = f.values();
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] == x) continue;
    const double term = kernel(x - support[i]) * values[i];
    acc.add(-term);
    kernel_weighted += std::abs(term);
  }
  const double err = std::abs(fx) * mass.err_bound + kernel.relative_accuracy() * kernel_weighted +
                     acc.rounding_bound();
  return {acc.sum, err};
}

Estimate apply_fractional_decay(double sigma, const DecayFunction& u, long x, long radius,
                                const QuadratureSpec& quad, bool model_tail) {
  require_sigma(sigma, "apply_fractional_decay");
  u.require_membership(sigma);
  if (radius < std::labs(x) + 12) throw DomainError("apply_fractional_decay: radius must be >= |x| + 12");
  const KernelEvaluator kernel = shared_evaluator(sigma, quad);
  const Estimate mass = total_mass_estimate(sigma, quad);
  const std::vector<double> kappa = kernel.table(radius);
  const double ux = u(x);

  SumAccumulator acc;
  acc.add(ux * mass.value);
  SumAccumulator conv;
  for (long z = 1; z <= radius; ++z) {
    const double k = kappa[static_cast<std::size_t>(z)];
    conv.add(k * u(x - z));
    conv.add(k * u(x + z));
  }
  acc.add(-conv.sum);

  double err = std::abs(ux) * mass.err_bound + std::abs(ux) * mass.value * u.relative_accuracy() +
               (kernel.relative_accuracy() + u.relative_accuracy()) * conv.abs_sum +
               conv.rounding_bound() + acc.rounding_bound();
  const bool use_series = model_tail && u.tail().has_value() &&
                          static_cast<double>(radius + 1 - std::labs(x)) >= u.tail()->valid_from;
  if (use_series) {
    const TailSum tail = convolution_tail(kernel.power_tail(static_cast<double>(radius + 1)), *u.tail(), x, radius);
    acc.add(-tail.value);
    err += tail.err_bound + (kernel.relative_accuracy() + u.relative_accuracy()) * std::abs(tail.value);
  } else {
    err += unmodelled_tail_bound(kernel, u, x, radius);
  }
  return {acc.sum, err + acc.rounding_bound()};
}

Estimate apply_negative_power(double alpha, const DecayFunction& u, long x, long radius,
                              const QuadratureSpec& quad, bool model_tail) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw DomainError("apply_negative_power: alpha must lie in (0, 1/2), got " + std::to_string(alpha));
  }
  u.require_membership(-alpha);
  if (radius < std::labs(x) + 12) throw DomainError("apply_negative_power: radius must be >= |x| + 12");
  const KernelEvaluator kernel = shared_evaluator(-alpha, quad);
  const std::vector<double> kappa = kernel.table(radius);
  SumAccumulator acc;
  acc.add(kappa[0] * u(x));
  for (long z = 1; z <= radius; ++z) {
    const double k = kappa[static_cast<std::size_t>(z)];
    acc.add(k * u(x - z));
    acc.add(k * u(x + z));
  }
  double err = (kernel.relative_accuracy() + u.relative_accuracy()) * acc.abs_sum;
  const bool use_series = model_tail && u.tail().has_value() &&
                          static_cast<double>(radius + 1 - std::labs(x)) >= u.tail()->valid_from;
  if (use_series) {
    const TailSum tail = convolution_tail(kernel.power_tail(static_cast<double>(radius + 1)), *u.tail(), x, radius);
    acc.add(tail.value);
    err += tail.err_bound + (kernel.relative_accuracy() + u.relative_accuracy()) * std::abs(tail.value);
  } else {
    err += unmodelled_tail_bound(kernel, u, x, radius);
  }
  return {acc.sum, err + acc.rounding_bound()};
}

Estimate apply_negative_power(double alpha, const LatticeFunction& u, long x, const QuadratureSpec& quad) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw DomainError("apply_negative_power: alpha must lie in (0, 1/2), got " + std::to_string(alpha));
  }
  const KernelEvaluator kernel = shared_evaluator(-alpha, quad);
  SumAccumulator acc;
  const auto& support = u.support();
  const auto& values = u.values();
  for (std::size_t i = 0; i < support.size(); ++i) acc.add(kernel(x - support[i]) * values[i]);
  return {acc.sum, kernel.relative_accuracy() * acc.abs_sum + acc.rounding_bound()};
}

IdentityCheck verify_kappa_identity(double sigma, double alpha, long x, long radius,
                                    const QuadratureSpec& quad, bool model_tail) {
  if (!(sigma > 0.0 && sigma <= alpha && alpha < 0.5)) {
    throw DomainError("verify_kappa_identity: requires 0 < sigma <= alpha < 1/2");
  }
  const DecayFunction u = DecayFunction::from_kernel(shared_evaluator(-alpha, quad));
  const Estimate lhs = apply_fractional_decay(sigma, u, x, radius, quad, model_tail);
  IdentityCheck check;
  check.value = lhs.value;
  double target_err = 0.0;
  if (sigma == alpha) {
    check.target = x == 0 ? 1.0 : 0.0;
  } else {
    const KernelEvaluator target = shared_evaluator(sigma - alpha, quad);
    check.target = target(x);
    target_err = target.relative_accuracy() * std::abs(check.target);
  }
  check.residual = std::abs(check.value - check.target);
  check.err_bound = lhs.err_bound + target_err;
  return check;
}

std::vector<double> b_norm(const std::function<double(long)>& u, double s, const std::vector<long>& grid) {
  std::vector<long> sorted = grid;
  if (!std::is_sorted(sorted.begin(), sorted.end())) throw DomainError("b_norm: grid must be increasing");
  std::vector<double> out;
  double sum = 0.0;
  long next = 0;
  for (long n : sorted) {
    if (n < 0) throw DomainError("b_norm: grid entries must be >= 0");
    for (; next <= n; ++next) {
      const double w = std::pow(1.0 + static_cast<double>(next), -1.0 - 2.0 * s);
      sum += std::abs(u(next)) * w;
      if (next != 0) sum += std::abs(u(-next)) * w;
    }
    out.push_back(sum);
  }
  return out;
}

}  // namespace fraclap
