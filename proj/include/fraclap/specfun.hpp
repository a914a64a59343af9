#pragma once

#include <vector>

/// Special functions used by the kernel formulas.
///
/// All functions are pure and thread safe. Domain violations throw
/// fraclap::DomainError.
namespace fraclap::specfun {

/// ln Γ(x) for x > 0.
///
/// Stirling series for x >= 10; smaller arguments are shifted upward with the
/// recurrence Γ(x+1) = xΓ(x). Absolute error is a few ulps of max(1, |ln Γ(x)|).
double log_gamma(double x);

/// ln Γ(a) - ln Γ(b) for a, b > 0.
///
/// For large, close arguments the difference is formed analytically from the
/// Stirling series (with log1p), so no precision is lost to cancellation of
/// the two large logarithms.
double log_gamma_ratio(double a, double b);

/// ln Γ(n+p) - ln Γ(n+q) for large n with small offsets p, q. The offset
/// difference p - q enters exactly, so the rounding of n+p and n+q (an ulp of
/// n) is not amplified by ln n.
double log_gamma_ratio_shifted(double n, double p, double q);

/// Γ(a) / Γ(b) for a, b > 0, without intermediate overflow.
double gamma_ratio(double a, double b);

/// |Γ(-s)| = π / (sin(πs) Γ(1+s)) for s in [1e-8, 1).
double abs_gamma_neg(double s);

/// Exponentially scaled modified Bessel function e^{-z} I_n(z), integer n, z >= 0.
double scaled_bessel_i(long n, double z);

/// e^{-z} I_k(z) for k = 0..n_max, computed in one Miller sweep.
std::vector<double> scaled_bessel_i_row(long n_max, double z);

/// Lattice heat kernel e^{-tΔ}1_0(x) = e^{-2t} I_|x|(2t), t >= 0.
double heat_kernel(double t, long x);

}  // namespace fraclap::specfun
