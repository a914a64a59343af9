#pragma once

#include <string>
#include <vector>

#include "fraclap/estimate.hpp"
#include "fraclap/hardy.hpp"
#include "fraclap/lattice.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {

struct FormConfig {
  long truncation_radius = 10000;
  /// Largest accepted error bound for the part of a pair sum beyond the radius.
  double pair_tail_tol = 1e-8;
  QuadratureSpec quad = QuadratureSpec::from_environment();
  bool parallel = false;
};

/// Q^σ(f) = ½ Σ κ_σ(x-y)(f(x)-f(y))² = S_σ Σ f² - Σ_{x≠y} κ_σ(x-y) f(x) f(y).
Estimate q_form(double sigma, const LatticeFunction& f, const FormConfig& cfg = {});

/// Q^σ_{-α}(φ) = ½ Σ κ_σ(x-y) ψ(x) ψ(y) (φ(x)-φ(y))² with ψ = κ_{-α}.
/// Pairs with one point off the support are summed to the radius and the rest
/// is taken from the large-|x| series of both kernels.
Estimate gst_form(double sigma, double alpha, const LatticeFunction& phi, const FormConfig& cfg = {});

struct GstCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double err_bound = 0.0;
  bool passed() const { return residual <= err_bound; }
};

/// Both sides of (Q^σ - w_{σ,α})(φψ) = Q^σ_{-α}(φ).
GstCheck gst_identity_residual(double sigma, double alpha, const LatticeFunction& phi,
                               const FormConfig& cfg = {});

/// e_n(x) = max(0, 1 - sqrt(ln|x| / ln n)), e_n(0) = 1; n >= 2.
double null_sequence(long n, long x);
LatticeFunction null_sequence_function(long n);

/// Q^σ_{-α}(e_n), summed with radius max(truncation_radius, 10n) and folded
/// onto x >= 0.
Estimate null_sequence_energy(double sigma, double alpha, long n, const FormConfig& cfg = {});

/// Σ_{|x|<=N} κ_{-α}(x) κ_{σ-α}(x) for each N of an increasing grid.
std::vector<double> null_criticality_sums(double sigma, double alpha, const std::vector<long>& grid,
                                          const QuadratureSpec& quad = QuadratureSpec::from_environment());

struct LogFit {
  double intercept = 0.0;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  /// Largest relative deviation of per-decade increments from their mean.
  double increment_spread = 0.0;
  /// "divergent-log" or "convergent".
  std::string diagnosis;
};

/// Least squares fit of sums against ln N. Divergence is declared when the
/// slope exceeds three standard errors, R² >= 0.999 and the increments between
/// successive grid points, normalized by Δ ln N, agree within 20%.
LogFit log_fit(const std::vector<long>& grid, const std::vector<double>& sums);

/// Q^σ(φ) / Σ w φ².
double hardy_rayleigh(double sigma, const HardyWeight& weight, const LatticeFunction& phi,
                      const FormConfig& cfg = {});

}  // namespace fraclap
