#include "fraclap/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fraclap/errors.hpp"
#include "fraclap/forms.hpp"
#include "fraclap/hardy.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/operator.hpp"
#include "fraclap/spectral.hpp"

namespace fraclap {
namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> sigmas(const AcceptanceOptions& o, std::vector<double> defaults) {
  if (o.sigma) return {*o.sigma};
  return defaults;
}

CriterionResult backend_concordance(const AcceptanceOptions& o) {
  double worst = 0.0;
  std::string where;
  for (double s : sigmas(o, {0.1, 0.25, 0.4, 0.49, 0.7})) {
    const KernelOrder order(s);
    for (long x = 1; x <= 50; ++x) {
      const double c = kappa_closed(s, x);
      const double h = kappa_heat(order, x, o.quad);
      const double f = kappa_fourier(order, x, o.quad);
      const double gap = std::max({std::abs(c - h) / c, std::abs(c - f) / c, std::abs(h - f) / c});
      if (gap > worst) {
        worst = gap;
        where = "sigma=" + sci(s) + ", x=" + std::to_string(x);
      }
    }
  }
  const double spot = std::abs(kappa_closed(0.5, 1) - 4.0 / (3.0 * std::numbers::pi));
  CriterionResult r;
  r.passed = worst <= 1e-9 && spot <= 1e-10;
  r.detail = "max pairwise relative gap " + sci(worst) + " at " + where + " (tol 1e-9); |kappa_1/2(1) - 4/(3pi)| = " +
             sci(spot) + " (tol 1e-10)";
  return r;
}

CriterionResult kernel_identity(const AcceptanceOptions& o) {
  const std::vector<double> grid = {0.1, 0.2, 0.25, 0.3, 0.4};
  int checked = 0;
  int failed = 0;
  double worst_ratio = 0.0;
  double max_bound = 0.0;
  double max_residual = 0.0;
  for (double s : sigmas(o, grid)) {
    std::vector<double> alphas;
    for (double a : grid) {
      if (a >= s) alphas.push_back(a);
    }
    if (o.sigma && std::find(alphas.begin(), alphas.end(), s) == alphas.end()) alphas.insert(alphas.begin(), s);
    for (double a : alphas) {
      for (long x : {0L, 1L, -1L, 5L, -5L, 20L, -20L}) {
        const IdentityCheck c = verify_kappa_identity(s, a, x, 100000, o.quad);
        ++checked;
        if (!c.passed() || c.err_bound > 1e-6) ++failed;
        max_bound = std::max(max_bound, c.err_bound);
        max_residual = std::max(max_residual, c.residual);
        if (c.err_bound > 0.0) worst_ratio = std::max(worst_ratio, c.residual / c.err_bound);
      }
    }
  }
  CriterionResult r;
  r.passed = failed == 0 && checked > 0;
  r.detail = std::to_string(checked) + " points, " + std::to_string(failed) + " violations; max residual " +
             sci(max_residual) + ", max bound " + sci(max_bound) + " (cap 1e-6), max residual/bound " + sci(worst_ratio);
  return r;
}

CriterionResult gst_identity(const AcceptanceOptions& o) {
  std::vector<std::pair<double, double>> pairs = {{0.25, 0.375}, {0.1, 0.3}, {0.3, 0.45}};
  if (o.sigma) pairs = {{*o.sigma, critical_alpha(*o.sigma)}};
  FormConfig cfg;
  cfg.quad = o.quad;
  cfg.parallel = o.parallel;
  int failed = 0;
  int checked = 0;
  double worst_ratio = 0.0;
  for (auto [s, a] : pairs) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const GstCheck c = gst_identity_residual(s, a, LatticeFunction::random(seed, -10, 10), cfg);
      ++checked;
      if (!c.passed()) ++failed;
      worst_ratio = std::max(worst_ratio, c.residual / c.err_bound);
    }
  }
  CriterionResult r;
  r.passed = failed == 0;
  r.detail = std::to_string(checked) + " random functions, " + std::to_string(failed) +
             " violations; max residual/bound " + sci(worst_ratio);
  return r;
}

CriterionResult weight_identity(const AcceptanceOptions& o) {
  double worst = 0.0;
  for (double s : sigmas(o, {0.05, 0.1, 0.25, 0.4, 0.45})) {
    const HardyWeight fam = HardyWeight::family(s, critical_alpha(s), o.quad);
    const std::vector<double> w = fam.table(10000);
    for (long x = 0; x <= 10000; ++x) {
      const double cr = weight_cr(s, x);
      worst = std::max(worst, std::abs(w[static_cast<std::size_t>(x)] - cr) / cr);
    }
  }
  CriterionResult r;
  r.passed = worst <= 1e-8;
  r.detail = "max relative gap " + sci(worst) + " over x in [0,10^4] (tol 1e-8)";
  return r;
}

CriterionResult hardy_inequality(const AcceptanceOptions& o) {
  double min_eig = 1e300;
  double min_ratio = 1e300;
  FormConfig cfg;
  cfg.quad = o.quad;
  cfg.parallel = o.parallel;
  for (double s : sigmas(o, {0.1, 0.25, 0.4})) {
    const HardyWeight w = HardyWeight::cr(s);
    for (long n : {50L, 200L, 800L}) min_eig = std::min(min_eig, hardy_matrix_check(s, w, n, o.quad, o.parallel));
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      min_ratio = std::min(min_ratio, hardy_rayleigh(s, w, LatticeFunction::random(seed, -50, 50), cfg));
    }
  }
  CriterionResult r;
  r.passed = min_eig >= -1e-9 && min_ratio >= 1.0 - 1e-9;
  r.detail = "min eigenvalue of A - diag(w) " + sci(min_eig) + " (tol -1e-9); min Rayleigh ratio " +
             sci(min_ratio) + " (tol 1 - 1e-9)";
  return r;
}

CriterionResult asymptotic_constant_check(const AcceptanceOptions& o) {
  double worst = 0.0;
  for (double s : sigmas(o, {0.1, 0.25, 0.4})) {
    const double c = c_sigma(s);
    for (double x : {1e3, 1e4, 1e5}) {
      const double gap = std::abs(std::pow(x, 2.0 * s) * weight_cr(s, static_cast<long>(x)) - c);
      worst = std::max(worst, gap / (10.0 * c / x));
    }
  }
  CriterionResult r;
  r.passed = worst <= 1.0;
  r.detail = "max |x^{2s} w(x) - c_s| / (10 c_s / x) = " + sci(worst) + " (must be <= 1)";
  return r;
}

CriterionResult null_sequence_energies(const AcceptanceOptions& o) {
  FormConfig cfg;
  cfg.quad = o.quad;
  cfg.parallel = o.parallel;
  bool ok = true;
  std::ostringstream detail;
  for (double s : sigmas(o, {0.1, 0.25})) {
    const double a_star = critical_alpha(s);
    std::vector<double> e;
    for (long n : {100L, 1000L, 10000L}) e.push_back(null_sequence_energy(s, a_star, n, cfg).value);
    const double spread = *std::max_element(e.begin(), e.end()) / *std::min_element(e.begin(), e.end());
    const double low100 = null_sequence_energy(s, a_star - 0.05, 100, cfg).value;
    const double low10k = null_sequence_energy(s, a_star - 0.05, 10000, cfg).value;
    const double ratio = low10k / low100;
    ok = ok && spread < 2.0 && ratio <= 0.7;
    detail << "sigma=" << s << ": max/min at alpha* " << sci(spread) << " (< 2), E(10^4)/E(10^2) at alpha*-0.05 "
           << sci(ratio) << " (<= 0.7); ";
  }
  CriterionResult r;
  r.passed = ok;
  r.detail = detail.str();
  return r;
}

CriterionResult criticality_dichotomy(const AcceptanceOptions& o) {
  const std::vector<long> grid = {100, 1000, 10000, 100000};
  bool ok = true;
  std::ostringstream detail;
  for (double s : sigmas(o, {0.1, 0.25})) {
    const double a_star = critical_alpha(s);
    const std::vector<double> at = null_criticality_sums(s, a_star, grid, o.quad);
    const LogFit fit = log_fit(grid, at);
    const std::vector<double> below = null_criticality_sums(s, a_star - 0.05, grid, o.quad);
    const double increment = (below[3] - below[2]) / below[3];
    const bool fit_ok = fit.slope > 0.0 && fit.r_squared >= 0.999;
    ok = ok && fit_ok && increment <= 1e-4;
    detail << "sigma=" << s << ": slope " << sci(fit.slope) << ", R^2 " << sci(fit.r_squared)
           << " (>= 0.999); relative increment 10^4->10^5 at alpha*-0.05 " << sci(increment) << " (<= 1e-4); ";
  }
  CriterionResult r;
  r.passed = ok;
  r.detail = detail.str();
  return r;
}

CriterionResult constant_scan_check(const AcceptanceOptions& o) {
  bool ok = true;
  std::ostringstream detail;
  for (double s : sigmas(o, {0.1, 0.25})) {
    const ConstantScan scan = constant_scan(s, alpha_grid(s, 1e-3));
    const double distance = std::abs(scan.argmax - critical_alpha(s));
    const double gap = std::abs(scan.maximum - c_sigma(s)) / c_sigma(s);
    ok = ok && distance <= 1e-3 + 1e-12 && gap <= 1e-6;
    detail << "sigma=" << s << ": argmax " << scan.argmax << " (distance " << sci(distance)
           << "), max vs c_sigma relative gap " << sci(gap) << "; ";
  }
  CriterionResult r;
  r.passed = ok;
  r.detail = detail.str();
  return r;
}

CriterionResult optimality_near_infinity(const AcceptanceOptions& o) {
  const double s = o.sigma.value_or(0.25);
  const ProbeRun run = optimality_search(s, HardyWeight::cr(s), 0.2, 5, 2000, o.quad, o.parallel);
  std::ostringstream detail;
  detail << "min eigenvalues:";
  for (std::size_t i = 0; i < run.sizes.size(); ++i) detail << " N=" << run.sizes[i] << ":" << sci(run.min_eigenvalues[i]);
  if (run.threshold) {
    detail << "; first negative at N=" << *run.threshold;
  } else {
    detail << "; no negative eigenvalue up to N=2000";
  }
  CriterionResult r;
  r.passed = run.threshold.has_value();
  r.detail = detail.str();
  return r;
}

}  // namespace

std::string criterion_name(int id) {
  static const char* names[] = {"backend concordance",   "kernel identity",       "ground state transform",
                                "weight identity",       "Hardy inequality",      "asymptotic constant",
                                "null-sequence energies", "criticality dichotomy", "constant scan",
                                "optimality near infinity"};
  if (id < 1 || id > kCriterionCount) throw DomainError("unknown criterion " + std::to_string(id));
  return names[id - 1];
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  if (options.sigma && !(*options.sigma > 0.0 && *options.sigma < 0.5)) {
    throw DomainError("acceptance: sigma must lie in (0, 1/2)");
  }
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = backend_concordance(options); break;
    case 2: r = kernel_identity(options); break;
    case 3: r = gst_identity(options); break;
    case 4: r = weight_identity(options); break;
    case 5: r = hardy_inequality(options); break;
    case 6: r = asymptotic_constant_check(options); break;
    case 7: r = null_sequence_energies(options); break;
    case 8: r = criticality_dichotomy(options); break;
    case 9: r = constant_scan_check(options); break;
    case 10: r = optimality_near_infinity(options); break;
    default: throw DomainError("unknown criterion " + std::to_string(id));
  }
  r.id = id;
  r.name = criterion_name(id);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    results.push_back(run_criterion(id, options));
    if (on_result) on_result(results.back());
  }
  return results;
}

}  // namespace fraclap
