#pragma once

#include <functional>
#include <vector>

#include "fraclap/estimate.hpp"
#include "fraclap/lattice.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {

/// S_σ with its quadrature error, memoized per (σ, tolerance).
Estimate total_mass_estimate(double sigma, const QuadratureSpec& quad = QuadratureSpec::from_environment());

/// A constant C with κ_α(z) <= C|z|^{-1-2α} for |z| >= R: 1.5 times the
/// asymptotic constant, checked at |z| ∈ {R, 2R, 10R} (CertificationError if
/// violated).
double certified_kernel_constant(const KernelEvaluator& kernel, long radius);

/// Δ^σ f(x) = Σ_y κ_σ(x-y)(f(x) - f(y)) for finitely supported f.
/// Pairs beyond the radius are summed exactly through S_σ, so the bound only
/// covers quadrature and rounding. Requires R >= max(|x|, radius of f) + 10.
Estimate apply_fractional(double sigma, const LatticeFunction& f, long x, long radius,
                          const QuadratureSpec& quad = QuadratureSpec::from_environment());

/// Δ^σ u(x) for u in ℓ¹(ℤ, (1+|x|)^{-1-2σ}), truncated at |x-y| <= R.
/// When u carries a series and model_tail is set, the remaining sum is
/// evaluated from the series; otherwise it is bounded with the decay
/// certificate. u is taken to be even when its series is used.
Estimate apply_fractional_decay(double sigma, const DecayFunction& u, long x, long radius,
                                const QuadratureSpec& quad = QuadratureSpec::from_environment(),
                                bool model_tail = true);

/// Δ^{-α} u(x) = Σ_y κ_{-α}(x-y) u(y) for u in ℓ¹(ℤ, (1+|x|)^{-1+2α}), α ∈ (0, 1/2).
Estimate apply_negative_power(double alpha, const DecayFunction& u, long x, long radius,
                              const QuadratureSpec& quad = QuadratureSpec::from_environment(),
                              bool model_tail = true);
/// Exact finite convolution for finitely supported u.
Estimate apply_negative_power(double alpha, const LatticeFunction& u, long x,
                              const QuadratureSpec& quad = QuadratureSpec::from_environment());

struct IdentityCheck {
  double value = 0.0;
  double target = 0.0;
  double residual = 0.0;
  double err_bound = 0.0;
  bool passed() const { return residual <= err_bound; }
};

/// Compares Δ^σ κ_{-α}(x) with κ_{σ-α}(x) for 0 < σ <= α < 1/2.
IdentityCheck verify_kappa_identity(double sigma, double alpha, long x, long radius = 100000,
                                    const QuadratureSpec& quad = QuadratureSpec::from_environment(),
                                    bool model_tail = true);

/// Partial sums Σ_{|x|<=N} |u(x)| (1+|x|)^{-1-2s} for each N in the grid.
std::vector<double> b_norm(const std::function<double(long)>& u, double s, const std::vector<long>& grid);

}  // namespace fraclap
