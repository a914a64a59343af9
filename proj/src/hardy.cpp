#include "fraclap/hardy.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "fraclap/errors.hpp"
#include "fraclap/specfun.hpp"

namespace fraclap {
namespace {

void require_hardy_sigma(double sigma, const char* what) {
  if (!(sigma > 0.0 && sigma < 0.5)) {
    throw DomainError(std::string(what) + ": sigma must lie in (0, 1/2), got " + std::to_string(sigma));
  }
}

void require_family(double sigma, double alpha, const char* what) {
  require_hardy_sigma(sigma, what);
  if (!(alpha >= sigma && alpha < 0.5)) {
    throw DomainError(std::string(what) + ": alpha must lie in [sigma, 1/2), got " + std::to_string(alpha));
  }
}

}  // namespace

double c_sigma(double sigma) {
  require_hardy_sigma(sigma, "c_sigma");
  const double lg = specfun::log_gamma_ratio((1.0 + 2.0 * sigma) / 4.0, (1.0 - 2.0 * sigma) / 4.0);
  return std::pow(4.0, sigma) * std::exp(2.0 * lg);
}

double weight_cr(double sigma, long x) {
  const double c = c_sigma(sigma);
  const double n = static_cast<double>(std::labs(x));
  const double lg = specfun::log_gamma_ratio_shifted(n, (1.0 - 2.0 * sigma) / 4.0, (1.0 + 2.0 * sigma) / 4.0) +
                    specfun::log_gamma_ratio_shifted(n, (3.0 - 2.0 * sigma) / 4.0, (3.0 + 2.0 * sigma) / 4.0);
  return c * std::exp(lg);
}

double weight_family(double sigma, double alpha, long x, const QuadratureSpec& quad) {
  require_family(sigma, alpha, "weight_family");
  const KernelEvaluator ground = shared_evaluator(-alpha, quad);
  if (sigma == alpha) return x == 0 ? 1.0 / ground(0) : 0.0;
  return shared_evaluator(sigma - alpha, quad)(x) / ground(x);
}

double leading_constant(double sigma, double alpha) {
  require_hardy_sigma(sigma, "leading_constant");
  if (!(alpha > sigma && alpha < 0.5)) {
    throw DomainError("leading_constant: alpha must lie in (sigma, 1/2), got " + std::to_string(alpha));
  }
  return asymptotic_constant(KernelOrder(sigma - alpha)) / asymptotic_constant(KernelOrder(-alpha));
}

double critical_alpha(double sigma) { return (1.0 + 2.0 * sigma) / 4.0; }

std::vector<double> alpha_grid(double sigma, double step) {
  require_hardy_sigma(sigma, "alpha_grid");
  if (!(step > 0.0)) throw DomainError("alpha_grid: step must be > 0");
  std::vector<double> grid;
  const double hi = 0.5 - step;
  for (long k = 1;; ++k) {
    // Round to the step's decimal resolution so grid points such as 0.3 are hit exactly.
    const double a = std::round((sigma + static_cast<double>(k) * step) * 1e12) / 1e12;
    if (a > hi + 1e-12) break;
    grid.push_back(a);
  }
  return grid;
}

ConstantScan constant_scan(double sigma, const std::vector<double>& alphas) {
  if (alphas.empty()) throw DomainError("constant_scan: empty grid");
  ConstantScan scan;
  scan.alphas = alphas;
  for (double a : alphas) {
    const double c = leading_constant(sigma, a);
    scan.constants.push_back(c);
    if (scan.constants.size() == 1 || c > scan.maximum) {
      scan.maximum = c;
      scan.argmax = a;
    }
  }
  return scan;
}

HardyWeight::HardyWeight(Variant v, double sigma, double alpha, double scale, const QuadratureSpec& quad)
    : variant_(v), sigma_(sigma), alpha_(alpha), scale_(scale), quad_(quad) {}

HardyWeight HardyWeight::cr(double sigma) {
  require_hardy_sigma(sigma, "HardyWeight");
  return HardyWeight(Variant::cr, sigma, critical_alpha(sigma), 1.0, QuadratureSpec{});
}

HardyWeight HardyWeight::family(double sigma, double alpha, const QuadratureSpec& quad) {
  require_family(sigma, alpha, "HardyWeight");
  return HardyWeight(Variant::family, sigma, alpha, 1.0, quad);
}

HardyWeight HardyWeight::scaled(double factor) const {
  if (!(factor >= 0.0)) throw DomainError("HardyWeight::scaled: factor must be >= 0");
  HardyWeight w = *this;
  w.scale_ *= factor;
  return w;
}

double HardyWeight::operator()(long x) const {
  if (variant_ == Variant::cr) return scale_ * weight_cr(sigma_, x);
  return scale_ * weight_family(sigma_, alpha_, x, quad_);
}

std::vector<double> HardyWeight::table(long max_abs) const {
  std::vector<double> out(static_cast<std::size_t>(max_abs) + 1);
  if (variant_ == Variant::family && alpha_ > sigma_) {
    const std::vector<double> num = shared_evaluator(sigma_ - alpha_, quad_).table(max_abs);
    const std::vector<double> den = shared_evaluator(-alpha_, quad_).table(max_abs);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale_ * num[i] / den[i];
    return out;
  }
  for (long x = 0; x <= max_abs; ++x) out[static_cast<std::size_t>(x)] = (*this)(x);
  return out;
}

double HardyWeight::leading_constant() const {
  if (variant_ == Variant::cr) return scale_ * c_sigma(sigma_);
  if (alpha_ == sigma_) return 0.0;
  return scale_ * fraclap::leading_constant(sigma_, alpha_);
}

std::string HardyWeight::label() const {
  std::ostringstream os;
  os.precision(12);
  if (variant_ == Variant::cr) {
    os << "cr";
  } else {
    os << "family:" << alpha_;
  }
  if (scale_ != 1.0) os << "*" << scale_;
  return os.str();
}

double HardyWeight::relative_accuracy() const {
  if (variant_ == Variant::cr) return 4e-14;
  return 2.0 * std::max(quad_.rel_tol, 2e-14);
}

}  // namespace fraclap
