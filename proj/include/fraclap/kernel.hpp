#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fraclap/quadrature.hpp"
#include "fraclap/tail_sums.hpp"

namespace fraclap {

/// A fractional order α ∈ (-1/2, 1).
class KernelOrder {
 public:
  explicit KernelOrder(double alpha);
  double alpha() const { return alpha_; }
  bool is_zero() const { return alpha_ == 0.0; }
  bool is_positive() const { return alpha_ > 0.0; }

 private:
  double alpha_;
};

enum class Backend { closed_form, heat_integral, fourier };

std::string to_string(Backend b);
/// Accepts "closed", "heat", "fourier" and the enumerator names.
Backend parse_backend(const std::string& name);
/// closed_form for α > 0, fourier otherwise.
Backend default_backend(const KernelOrder& order);

/// 4^α Γ(1/2+α) / (√π |Γ(-α)|), the coefficient of |x|^{-1-2α} in κ_α(x).
double asymptotic_constant(const KernelOrder& order);

/// κ_σ(x) from the Gamma-ratio formula, σ ∈ (0,1); 0 at x = 0.
double kappa_closed(double sigma, long x);

/// κ_α(x) = |Γ(-α)|^{-1} ∫_0^∞ e^{-2t} I_|x|(2t) t^{-1-α} dt.
double kappa_heat(const KernelOrder& order, long x, const QuadratureSpec& quad);

/// κ_α(x) = ±(1/π) ∫_0^π (2 sin(θ/2))^{2α} cos(xθ) dθ, + for α < 0 and - for α > 0.
double kappa_fourier(const KernelOrder& order, long x, const QuadratureSpec& quad);

/// |Γ(-β)|^{-1} ∫_0^∞ e^{-εt} e^{-2t} I_|x|(2t) t^{-1-β} dt.
double kappa_regularized(double beta, double eps, long x, const QuadratureSpec& quad);

/// S_σ = (1/π) ∫_0^π (2 sin(θ/2))^{2σ} dθ = Σ_{z≠0} κ_σ(z).
double total_mass(double sigma, const QuadratureSpec& quad);

/// Upper bound for Σ_{|z|>R} κ_σ(z) using the constant 1.5·asymptotic_constant,
/// which is checked against κ_σ at |x| ∈ {R, 2R, 10R} first
/// (CertificationError if it fails). R >= 10.
double tail_sum_bound(double sigma, long radius);

/// Large-|x| expansion of κ_α in powers |x|^{-(1+2α+2k)}, derived from the
/// θ → 0 behaviour of the Fourier symbol. Accurate to rounding for |x| >= 12.
class KernelExpansion {
 public:
  static constexpr double kMinArgument = 12.0;

  explicit KernelExpansion(const KernelOrder& order);
  double operator()(double x) const;
  /// The series as a PowerTail valid from max(valid_from, kMinArgument).
  PowerTail power_tail(double valid_from) const;

 private:
  double alpha_;
  std::vector<double> coefficients_;
};

/// Memoizing κ_α evaluator. Copies share one cache, which is safe for
/// concurrent use.
class KernelEvaluator {
 public:
  KernelEvaluator(const KernelOrder& order, Backend backend,
                  const QuadratureSpec& quad = QuadratureSpec::from_environment());
  explicit KernelEvaluator(const KernelOrder& order)
      : KernelEvaluator(order, default_backend(order)) {}

  const KernelOrder& order() const;
  Backend backend() const;
  const QuadratureSpec& quad() const;

  double operator()(long x) const;
  /// κ_α(0), ..., κ_α(max_abs).
  std::vector<double> table(long max_abs, bool parallel = false) const;
  /// Bound on the relative error of returned values.
  double relative_accuracy() const;
  /// Series for |x| >= valid_from (α ≠ 0).
  PowerTail power_tail(double valid_from) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Process-wide evaluator for (α, backend, rel_tol), so repeated runs share a cache.
KernelEvaluator shared_evaluator(double alpha, Backend backend,
                                 const QuadratureSpec& quad = QuadratureSpec::from_environment());
/// As above with the default backend.
KernelEvaluator shared_evaluator(double alpha,
                                 const QuadratureSpec& quad = QuadratureSpec::from_environment());

}  // namespace fraclap
