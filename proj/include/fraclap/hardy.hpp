#pragma once

#include <string>
#include <vector>

#include "fraclap/kernel.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {

/// c_σ = 4^σ Γ((1+2σ)/4)² / Γ((1-2σ)/4)², σ ∈ (0, 1/2).
double c_sigma(double sigma);

/// w_σ(x) = c_σ Γ(|x|+(1-2σ)/4) Γ(|x|+(3-2σ)/4) / (Γ(|x|+(3+2σ)/4) Γ(|x|+(1+2σ)/4)).
double weight_cr(double sigma, long x);

/// w_{σ,α}(x) = κ_{σ-α}(x) / κ_{-α}(x) for 0 < σ <= α < 1/2.
double weight_family(double sigma, double alpha, long x,
                     const QuadratureSpec& quad = QuadratureSpec::from_environment());

/// lim x^{2σ} w_{σ,α}(x) = A(σ-α)/A(-α), A the kernel asymptotic constant; σ < α < 1/2.
double leading_constant(double sigma, double alpha);

/// (1+2σ)/4.
double critical_alpha(double sigma);

struct ConstantScan {
  double argmax = 0.0;
  double maximum = 0.0;
  std::vector<double> alphas;
  std::vector<double> constants;
};

/// Grid σ + k·step, k >= 1, clipped to [σ + step, 1/2 - step].
std::vector<double> alpha_grid(double sigma, double step = 1e-3);
ConstantScan constant_scan(double sigma, const std::vector<double>& alphas);

/// w_σ or w_{σ,α}, optionally multiplied by a constant.
class HardyWeight {
 public:
  enum class Variant { cr, family };

  static HardyWeight cr(double sigma);
  static HardyWeight family(double sigma, double alpha,
                            const QuadratureSpec& quad = QuadratureSpec::from_environment());

  HardyWeight scaled(double factor) const;

  double operator()(long x) const;
  /// w(0), ..., w(max_abs).
  std::vector<double> table(long max_abs) const;
  /// lim x^{2σ} w(x); 0 for the one-point family weight α = σ.
  double leading_constant() const;

  double sigma() const { return sigma_; }
  double alpha() const { return alpha_; }
  double scale() const { return scale_; }
  Variant variant() const { return variant_; }
  std::string label() const;
  /// Bound on the relative error of returned values.
  double relative_accuracy() const;

 private:
  HardyWeight(Variant v, double sigma, double alpha, double scale, const QuadratureSpec& quad);
  Variant variant_;
  double sigma_;
  double alpha_;
  double scale_;
  QuadratureSpec quad_;
};

}  // namespace fraclap
