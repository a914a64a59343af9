#include "fraclap/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <unordered_map>

#include "fraclap/errors.hpp"
#include "fraclap/parallel.hpp"
#include "fraclap/specfun.hpp"

namespace fraclap {
namespace {

constexpr double kClosedFormAccuracy = 2e-14;

void require_nonzero(const KernelOrder& order, const char* what) {
  if (order.is_zero()) throw DomainError(std::string(what) + ": order must be nonzero");
}

double prefactor(double alpha) {
  const double gamma = alpha > 0.0 ? specfun::abs_gamma_neg(alpha) : std::exp(specfun::log_gamma(-alpha));
  return 1.0 / gamma;
}

// ∫_0^∞ e^{-εt} e^{-2t} I_|x|(2t) t^{-1-α} dt, split at t = 1.
// ∫_T^∞ e^{-2t} I_n(2t) t^{-1-α} dt from e^{-z} I_n(z) ~ (2πz)^{-1/2} Σ_k (-1)^k a_k(n) z^{-k},
// a_k = a_{k-1} (4n² - (2k-1)²) / (8k). T >= 50(n²+1) makes the terms fall off
// by a factor of at least 400 per order.
double heat_tail(double alpha, long n, double big_t) {
  const double nn = 4.0 * static_cast<double>(n) * static_cast<double>(n);
  double a_k = 1.0;
  double sum = 0.0;
  for (int k = 0; k < 40; ++k) {
    if (k > 0) a_k *= -(nn - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * 2.0 * big_t);
    const double e = k + 0.5 + alpha;
    const double term = a_k / e;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum * std::pow(big_t, -0.5 - alpha) / std::sqrt(4.0 * std::numbers::pi);
}

double heat_time_integral(double alpha, double eps, long x, const QuadratureSpec& quad) {
  const long n = std::labs(x);
  auto integrand = [&](double t) {
    if (t <= 0.0) return 0.0;
    return std::exp(-eps * t) * specfun::heat_kernel(t, n) * std::pow(t, -1.0 - alpha);
  };
  EndpointBehavior head;
  head.left_exponent = static_cast<double>(n) - 1.0 - alpha;
  const double near = integrate(integrand, 0.0, 1.0, quad, head).value;
  // The t^{-3/2-α} decay is too slow near α = -1/2 for any map of [1, ∞) onto a
  // bounded interval, so [1, T] is integrated in ln t and the rest is analytic.
  const double nd = static_cast<double>(n);
  double big_t = std::max(1e3, 50.0 * (nd * nd + 1.0));
  if (eps > 0.0) big_t = std::max(big_t, 40.0 / eps);
  auto log_integrand = [&](double u) {
    const double t = std::exp(u);
    return integrand(t) * t;
  };
  const double mid = integrate(log_integrand, 0.0, std::log(big_t), quad).value;
  // With ε > 0 the remainder carries e^{-εT} <= e^{-40} and is dropped.
  const double tail = eps > 0.0 ? 0.0 : heat_tail(alpha, n, big_t);
  return near + mid + tail;
}

}  // namespace

KernelOrder::KernelOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > -0.5 && alpha < 1.0)) {
    throw DomainError("kernel order must lie in (-1/2, 1), got " + std::to_string(alpha));
  }
}

std::string to_string(Backend b) {
  switch (b) {
    case Backend::closed_form: return "closed";
    case Backend::heat_integral: return "heat";
    case Backend::fourier: return "fourier";
  }
  return "unknown";
}

Backend parse_backend(const std::string& name) {
  if (name == "closed" || name == "closed_form") return Backend::closed_form;
  if (name == "heat" || name == "heat_integral") return Backend::heat_integral;
  if (name == "fourier") return Backend::fourier;
  throw DomainError("unknown backend '" + name + "'");
}

Backend default_backend(const KernelOrder& order) {
  return order.is_positive() ? Backend::closed_form : Backend::fourier;
}

double asymptotic_constant(const KernelOrder& order) {
  require_nonzero(order, "asymptotic_constant");
  const double a = order.alpha();
  return std::pow(4.0, a) * std::exp(specfun::log_gamma(0.5 + a)) * prefactor(a) /
         std::sqrt(std::numbers::pi);
}

double kappa_closed(double sigma, long x) {
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw DomainError("kappa_closed: sigma must lie in (0,1), got " + std::to_string(sigma));
  }
  if (x == 0) return 0.0;
  const double n = static_cast<double>(std::labs(x));
  return asymptotic_constant(KernelOrder(sigma)) *
         std::exp(specfun::log_gamma_ratio_shifted(n, -sigma, 1.0 + sigma));
}

double kappa_heat(const KernelOrder& order, long x, const QuadratureSpec& quad) {
  require_nonzero(order, "kappa_heat");
  if (x == 0 && order.is_positive()) {
    throw DomainError("kappa_heat: the time integral diverges at x = 0 for positive order");
  }
  return prefactor(order.alpha()) * heat_time_integral(order.alpha(), 0.0, x, quad);
}

double kappa_fourier(const KernelOrder& order, long x, const QuadratureSpec& quad) {
  require_nonzero(order, "kappa_fourier");
  if (x == 0 && order.is_positive()) {
    throw DomainError("kappa_fourier: x = 0 is excluded for positive order");
  }
  const double a = order.alpha();
  const double freq = static_cast<double>(x);
  auto integrand = [&](double theta) {
    return std::pow(2.0 * std::sin(0.5 * theta), 2.0 * a) * std::cos(freq * theta);
  };
  EndpointBehavior ends;
  ends.left_exponent = 2.0 * a;
  const double c = integrate(integrand, 0.0, std::numbers::pi, quad, ends).value / std::numbers::pi;
  return order.is_positive() ? -c : c;
}

double kappa_regularized(double beta, double eps, long x, const QuadratureSpec& quad) {
  const KernelOrder order(beta);
  require_nonzero(order, "kappa_regularized");
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw DomainError("kappa_regularized: eps must be > 0");
  }
  if (x == 0 && order.is_positive()) {
    throw DomainError("kappa_regularized: x = 0 is excluded for positive order");
  }
  return prefactor(beta) * heat_time_integral(beta, eps, x, quad);
}

double total_mass(double sigma, const QuadratureSpec& quad) {
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw DomainError("total_mass: sigma must lie in (0,1), got " + std::to_string(sigma));
  }
  auto integrand = [&](double theta) { return std::pow(2.0 * std::sin(0.5 * theta), 2.0 * sigma); };
  EndpointBehavior ends;
  ends.left_exponent = 2.0 * sigma;
  return integrate(integrand, 0.0, std::numbers::pi, quad, ends).value / std::numbers::pi;
}

double tail_sum_bound(double sigma, long radius) {
  if (radius < 10) throw DomainError("tail_sum_bound: radius must be >= 10");
  const double c = 1.5 * asymptotic_constant(KernelOrder(sigma));
  for (long x : {radius, 2 * radius, 10 * radius}) {
    const double scaled = std::pow(static_cast<double>(x), 1.0 + 2.0 * sigma) * kappa_closed(sigma, x);
    if (scaled > c) {
      throw CertificationError("tail_sum_bound: pointwise constant violated at x = " +
                               std::to_string(x));
    }
  }
  return 2.0 * c * std::pow(static_cast<double>(radius), -2.0 * sigma) / (2.0 * sigma);
}

struct KernelEvaluator::State {
  KernelOrder order;
  Backend backend;
  QuadratureSpec quad;
  std::unique_ptr<KernelExpansion> expansion;
  mutable std::shared_mutex mutex;
  mutable std::unordered_map<long, double> cache;

  State(const KernelOrder& o, Backend b, const QuadratureSpec& q) : order(o), backend(b), quad(q) {
    if (!order.is_zero()) expansion = std::make_unique<KernelExpansion>(order);
  }

  double compute(long n) const {
    if (order.is_zero()) return n == 0 ? 1.0 : 0.0;
    if (n == 0 && order.is_positive()) return 0.0;
    switch (backend) {
      case Backend::closed_form: return kappa_closed(order.alpha(), n);
      case Backend::heat_integral: return kappa_heat(order, n, quad);
      case Backend::fourier:
        if (static_cast<double>(n) >= KernelExpansion::kMinArgument) return (*expansion)(static_cast<double>(n));
        return kappa_fourier(order, n, quad);
    }
    return 0.0;
  }
};

KernelEvaluator::KernelEvaluator(const KernelOrder& order, Backend backend, const QuadratureSpec& quad) {
  quad.validate();
  if (backend == Backend::closed_form && !order.is_positive()) {
    throw DomainError("closed-form backend requires order in (0,1), got " +
                      std::to_string(order.alpha()));
  }
  state_ = std::make_shared<State>(order, backend, quad);
}

const KernelOrder& KernelEvaluator::order() const { return state_->order; }
Backend KernelEvaluator::backend() const { return state_->backend; }
const QuadratureSpec& KernelEvaluator::quad() const { return state_->quad; }

double KernelEvaluator::operator()(long x) const {
  const long n = std::labs(x);
  {
    std::shared_lock lock(state_->mutex);
    if (auto it = state_->cache.find(n); it != state_->cache.end()) return it->second;
  }
  const double value = state_->compute(n);
  std::unique_lock lock(state_->mutex);
  return state_->cache.emplace(n, value).first->second;
}

std::vector<double> KernelEvaluator::table(long max_abs, bool parallel) const {
  if (max_abs < 0) throw DomainError("KernelEvaluator::table: max_abs must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(max_abs) + 1);
  std::vector<long> missing;
  {
    std::shared_lock lock(state_->mutex);
    for (long n = 0; n <= max_abs; ++n) {
      auto it = state_->cache.find(n);
      if (it == state_->cache.end()) {
        missing.push_back(n);
      } else {
        out[static_cast<std::size_t>(n)] = it->second;
      }
    }
  }
  if (missing.empty()) return out;
  parallel_for(0, static_cast<long>(missing.size()), parallel, [&](long i) {
    const long n = missing[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(n)] = state_->compute(n);
  });
  std::unique_lock lock(state_->mutex);
  for (long n : missing) {
    out[static_cast<std::size_t>(n)] = state_->cache.emplace(n, out[static_cast<std::size_t>(n)]).first->second;
  }
  return out;
}

double KernelEvaluator::relative_accuracy() const {
  if (state_->order.is_zero()) return 0.0;
  if (state_->backend == Backend::closed_form) return kClosedFormAccuracy;
  return std::max(state_->quad.rel_tol, kClosedFormAccuracy);
}

PowerTail KernelEvaluator::power_tail(double valid_from) const {
  if (!state_->expansion) throw DomainError("power_tail: order must be nonzero");
  return state_->expansion->power_tail(valid_from);
}

KernelEvaluator shared_evaluator(double alpha, Backend backend, const QuadratureSpec& quad) {
  static std::mutex mutex;
  static std::map<std::tuple<double, int, double, int>, KernelEvaluator> registry;
  const auto key = std::make_tuple(alpha, static_cast<int>(backend), quad.rel_tol, quad.max_subdivisions);
  std::lock_guard lock(mutex);
  if (auto it = registry.find(key); it != registry.end()) return it->second;
  KernelEvaluator created(KernelOrder(alpha), backend, quad);
  registry.emplace(key, created);
  return created;
}

KernelEvaluator shared_evaluator(double alpha, const QuadratureSpec& quad) {
  return shared_evaluator(alpha, default_backend(KernelOrder(alpha)), quad);
}

}  // namespace fraclap
