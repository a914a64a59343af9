#pragma once

#include <vector>

namespace fraclap {

/// Even function of the lattice represented for |z| >= valid_from by the
/// series Σ_k coefficients[k]·|z|^{-exponents[k]}.
struct PowerTail {
  std::vector<double> coefficients;
  std::vector<double> exponents;
  double valid_from = 0.0;

  double operator()(double z) const;
  /// Largest |term| when z = valid_from among the last two series terms; a
  /// bound on the relative truncation error of the series.
  double truncation_ratio() const;
};

/// Hurwitz zeta ζ(s, q) = Σ_{k>=0} (q+k)^{-s}, s > 1, q > 0.
double hurwitz_zeta(double s, double q);

/// Σ_{|z|>R} P(z)·Q(z - x) for even tails P, Q, obtained by expanding
/// Q(z - x) binomially in x/z and summing powers with the Hurwitz zeta.
/// Requires R + 1 >= P.valid_from and R + 1 - |x| >= Q.valid_from.
struct TailSum {
  double value = 0.0;
  double err_bound = 0.0;
};
TailSum convolution_tail(const PowerTail& p, const PowerTail& q, long x, long radius);

/// Σ_{|z|>R} P(z).
TailSum power_tail_sum(const PowerTail& p, long radius);

}  // namespace fraclap
