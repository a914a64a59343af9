#include "fraclap/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "fraclap/errors.hpp"

namespace fraclap {
namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double error = 0.0;
  bool rounding_limited = false;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// One Gauss–Kronrod panel with the QUADPACK error heuristic.
Panel kronrod_panel(const std::function<double(double)>& f, double lo, double hi) {
  const auto& nodes = Kronrod::abscissa();
  const auto& kw = Kronrod::weights();
  const auto& gw = Gauss::weights();
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  std::vector<double> fp(nodes.size());
  std::vector<double> fm(nodes.size());
  const double f0 = f(center);
  double kronrod = kw[0] * f0;
  double gauss = 0.0;
  double abs_sum = kw[0] * std::abs(f0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    fp[i] = f(center + half * nodes[i]);
    fm[i] = f(center - half * nodes[i]);
    kronrod += kw[i] * (fp[i] + fm[i]);
    abs_sum += kw[i] * (std::abs(fp[i]) + std::abs(fm[i]));
    if (i % 2 == 1) gauss += gw[i / 2] * (fp[i] + fm[i]);
  }
  const double mean = 0.5 * kronrod;
  double asc = kw[0] * std::abs(f0 - mean);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    asc += kw[i] * (std::abs(fp[i] - mean) + std::abs(fm[i] - mean));
  }

  Panel p;
  p.lo = lo;
  p.hi = hi;
  p.value = kronrod * half;
  const double res_abs = abs_sum * std::abs(half);
  const double res_asc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  const double floor = 50.0 * kEps * res_abs;
  if (err <= floor) {
    err = floor;
    p.rounding_limited = true;
  }
  if (!std::isfinite(p.value)) {
    throw ConvergenceError("integrate: non-finite integrand value on [" + std::to_string(lo) +
                           ", " + std::to_string(hi) + "]");
  }
  p.error = err;
  return p;
}

QuadratureResult adaptive(const std::function<double(double)>& f, double lo, double hi,
                          const QuadratureSpec& spec) {
  std::priority_queue<Panel> queue;
  queue.push(kronrod_panel(f, lo, hi));
  long evaluations = 21;
  double value = queue.top().value;
  double error = queue.top().error;
  auto resum = [&] {
    value = 0.0;
    error = 0.0;
    for (auto copy = queue; !copy.empty(); copy.pop()) {
      value += copy.top().value;
      error += copy.top().error;
    }
  };
  for (long step = 1;; ++step) {
    if (step % 64 == 0) resum();
    const double target = std::max(spec.rel_tol * std::abs(value), spec.abs_tol);
    const Panel worst = queue.top();
    if (error <= target || worst.rounding_limited) break;
    if (static_cast<int>(queue.size()) >= spec.max_subdivisions) {
      resum();
      throw ConvergenceError("integrate: " + std::to_string(spec.max_subdivisions) +
                             " subdivisions exhausted; error estimate " + std::to_string(error) +
                             " exceeds target " + std::to_string(target));
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;
    queue.pop();
    const Panel left = kronrod_panel(f, worst.lo, mid);
    const Panel right = kronrod_panel(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    evaluations += 42;
  }
  resum();
  return {value, error, evaluations};
}

// Power that flattens an endpoint behaving like s^p after s = v^m.
double substitution_power(double p) {
  if (p < 0.0) return 1.0 / (1.0 + p);
  if (p == std::floor(p)) return 1.0;
  return std::max(1.0, std::ceil(3.0 / (1.0 + p)));
}

void require_exponent(double p, const char* which) {
  if (!(p > -1.0)) {
    throw DomainError(std::string("integrate: ") + which + " exponent must exceed -1");
  }
}

// ∫_a^b with a declared exponent at the left end only.
QuadratureResult left_singular(const std::function<double(double)>& f, double a, double b, double p,
                               const QuadratureSpec& spec) {
  const double m = substitution_power(p);
  if (m == 1.0) return adaptive(f, a, b, spec);
  const double width = b - a;
  auto g = [&](double v) {
    const double vm1 = std::pow(v, m - 1.0);
    return f(a + width * vm1 * v) * width * m * vm1;
  };
  return adaptive(g, 0.0, 1.0, spec);
}

QuadratureResult right_singular(const std::function<double(double)>& f, double a, double b,
                                double q, const QuadratureSpec& spec) {
  auto mirrored = [&](double s) { return f(a + b - s); };
  return left_singular(mirrored, a, b, q, spec);
}

QuadratureResult combine(const QuadratureResult& x, const QuadratureResult& y) {
  return {x.value + y.value, x.err_estimate + y.err_estimate, x.evaluations + y.evaluations};
}

QuadratureResult finite(const std::function<double(double)>& f, double a, double b,
                        const EndpointBehavior& ends, const QuadratureSpec& spec) {
  const bool left = ends.left_exponent != 0.0;
  const bool right = ends.right_exponent != 0.0;
  if (left && right) {
    const double mid = 0.5 * (a + b);
    return combine(left_singular(f, a, mid, ends.left_exponent, spec),
                   right_singular(f, mid, b, ends.right_exponent, spec));
  }
  if (right) return right_singular(f, a, b, ends.right_exponent, spec);
  return left_singular(f, a, b, ends.left_exponent, spec);
}

// ∫_a^∞ with t = a + c(1-w)/w, w ∈ (0,1]; near w = 0 the integrand behaves
// like w^{d-2}, and w = v^m is applied directly so t never loses digits.
QuadratureResult semi_infinite(const std::function<double(double)>& f, double a,
                               const EndpointBehavior& ends, const QuadratureSpec& spec) {
  const double c = ends.scale;
  const double m = substitution_power(ends.decay_exponent - 2.0);
  auto g = [&](double v) {
    const double w = std::pow(v, m);
    const double jacobian = c / (w * w) * m * std::pow(v, m - 1.0);
    return f(a + c * (1.0 - w) / w) * jacobian;
  };
  return adaptive(g, 0.0, 1.0, spec);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) throw DomainError("QuadratureSpec: abs_tol must be >= 0");
  if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
}

QuadratureSpec QuadratureSpec::from_environment() {
  QuadratureSpec spec;
  if (const char* raw = std::getenv("FRAC_HARDY_QUAD_TOL"); raw != nullptr && *raw != '\0') {
    char* end = nullptr;
    const double tol = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(tol > 0.0) || !std::isfinite(tol)) {
      throw DomainError(std::string("FRAC_HARDY_QUAD_TOL must be a positive number, got '") + raw +
                        "'");
    }
    spec.rel_tol = tol;
  }
  return spec;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec, const EndpointBehavior& ends) {
  spec.validate();
  require_exponent(ends.left_exponent, "left");
  require_exponent(ends.right_exponent, "right");
  if (!std::isfinite(a)) throw DomainError("integrate: lower limit must be finite");
  if (std::isinf(b) && b > 0.0) {
    if (!(ends.decay_exponent > 1.0)) {
      throw DomainError("integrate: decay exponent must exceed 1 on an infinite interval");
    }
    if (!(ends.scale > 0.0)) throw DomainError("integrate: scale must be > 0");
    if (ends.left_exponent != 0.0) {
      EndpointBehavior head;
      head.left_exponent = ends.left_exponent;
      return combine(finite(f, a, a + ends.scale, head, spec),
                     semi_infinite(f, a + ends.scale, ends, spec));
    }
    return semi_infinite(f, a, ends, spec);
  }
  if (!std::isfinite(b)) throw DomainError("integrate: upper limit must be finite or +inf");
  if (b == a) return {};
  if (b < a) {
    EndpointBehavior swapped = ends;
    std::swap(swapped.left_exponent, swapped.right_exponent);
    QuadratureResult r = finite(f, b, a, swapped, spec);
    r.value = -r.value;
    return r;
  }
  return finite(f, a, b, ends, spec);
}

}  // namespace fraclap
