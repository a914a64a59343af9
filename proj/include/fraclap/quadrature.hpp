#pragma once

#include <functional>

namespace fraclap {

/// Tolerances for adaptive integration.
struct QuadratureSpec {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  int max_subdivisions = 2000;

  /// Throws DomainError unless rel_tol > 0, abs_tol >= 0 and max_subdivisions >= 1.
  void validate() const;

  /// Defaults, with rel_tol overridden by FRAC_HARDY_QUAD_TOL when set.
  static QuadratureSpec from_environment();
};

/// Declared behaviour of the integrand at the ends of the interval.
///
/// An exponent p means f(t) ~ |t - endpoint|^p there (p > -1). For an
/// infinite upper limit, decay_exponent d means f(t) ~ t^{-d} (d > 1) and
/// scale is the length over which f varies; t = a + scale·u/(1-u).
struct EndpointBehavior {
  double left_exponent = 0.0;
  double right_exponent = 0.0;
  double decay_exponent = 2.0;
  double scale = 1.0;
};

struct QuadratureResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long evaluations = 0;
};

/// Adaptive 21-point Gauss–Kronrod integration of f over [a, b]; b may be
/// +infinity. Non-integer endpoint exponents are removed by a power
/// substitution before the adaptive sweep.
///
/// Throws ConvergenceError if max_subdivisions intervals are in use before
/// the error estimate drops below max(rel_tol·|value|, abs_tol). When the
/// estimate is limited by rounding rather than resolution the routine stops
/// early and reports the rounding-level estimate.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec, const EndpointBehavior& ends = {});

}  // namespace fraclap
