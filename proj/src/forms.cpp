#include "fraclap/forms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <string>

#include "fraclap/errors.hpp"
#include "fraclap/operator.hpp"
#include "fraclap/parallel.hpp"

namespace fraclap {
namespace {

void require_pair(double sigma, double alpha, const char* what) {
  if (!(sigma > 0.0 && sigma <= alpha && alpha < 0.5)) {
    throw DomainError(std::string(what) + ": requires 0 < sigma <= alpha < 1/2");
  }
}

std::size_t idx(long i) { return static_cast<std::size_t>(i); }

// Thread-safe merge target for per-row partial sums.
struct Totals {
  std::mutex mutex;
  SumAccumulator sum;
  double tail_err = 0.0;
  void merge(const SumAccumulator& part, double err) {
    std::lock_guard lock(mutex);
    sum.merge(part);
    tail_err += err;
  }
};

// Σ_{i<j} κ(x_j - x_i) c_i c_j (v_i - v_j)² over a sorted support.
SumAccumulator weighted_pair_sum(const std::vector<long>& support, const std::vector<double>& weights,
                                 const std::vector<double>& values, const std::vector<double>& kappa,
                                 bool parallel) {
  Totals totals;
  const long m = static_cast<long>(support.size());
  parallel_for(0, m, parallel, [&](long i) {
    SumAccumulator row;
    for (long j = i + 1; j < m; ++j) {
      const double diff = values[idx(i)] - values[idx(j)];
      row.add(kappa[idx(support[idx(j)] - support[idx(i)])] * weights[idx(i)] * weights[idx(j)] * diff * diff);
    }
    totals.merge(row, 0.0);
  });
  return totals.sum;
}

}  // namespace

Estimate q_form(double sigma, const LatticeFunction& f, const FormConfig& cfg) {
  if (f.radius() >= cfg.truncation_radius) {
    throw DomainError("q_form: support exceeds the truncation radius");
  }
  const Estimate mass = total_mass_estimate(sigma, cfg.quad);
  if (f.empty()) return {0.0, 0.0};
  const KernelEvaluator kernel = shared_evaluator(sigma, cfg.quad);
  const auto& support = f.support();
  const auto& values = f.values();
  const std::vector<double> kappa = kernel.table(support.back() - support.front());

  SumAccumulator squares;
  for (double v : values) squares.add(v * v);
  Totals cross;
  const long m = static_cast<long>(support.size());
  parallel_for(0, m, cfg.parallel, [&](long i) {
    SumAccumulator row;
    for (long j = i + 1; j < m; ++j) {
      row.add(2.0 * kappa[idx(support[idx(j)] - support[idx(i)])] * values[idx(i)] * values[idx(j)]);
    }
    cross.merge(row, 0.0);
  });
  SumAccumulator total;
  total.add(mass.value * squares.sum);
  total.add(-cross.sum.sum);
  const double err = mass.err_bound * squares.sum + mass.value * squares.rounding_bound() +
                     kernel.relative_accuracy() * cross.sum.abs_sum + cross.sum.rounding_bound() +
                     total.rounding_bound();
  return {total.sum, err};
}

Estimate gst_form(double sigma, double alpha, const LatticeFunction& phi, const FormConfig& cfg) {
  require_pair(sigma, alpha, "gst_form");
  const long radius = cfg.truncation_radius;
  if (phi.radius() + 12 > radius) throw DomainError("gst_form: support exceeds the truncation radius");
  if (phi.empty()) return {0.0, 0.0};
  const KernelEvaluator kernel = shared_evaluator(sigma, cfg.quad);
  const KernelEvaluator ground = shared_evaluator(-alpha, cfg.quad);
  const std::vector<double> kappa = kernel.table(radius + phi.radius(), cfg.parallel);
  const std::vector<double> psi = ground.table(radius, cfg.parallel);
  auto psi_at = [&](long y) { return psi[idx(std::labs(y))]; };

  const auto& support = phi.support();
  const auto& values = phi.values();
  std::vector<double> weights;
  for (long x : support) weights.push_back(psi_at(x));
  const SumAccumulator inside = weighted_pair_sum(support, weights, values, kappa, cfg.parallel);

  const long lo = support.front();
  const long hi = support.back();
  std::vector<long> holes;
  for (long y = lo, k = 0; y <= hi; ++y) {
    if (support[idx(k)] == y) {
      ++k;
    } else {
      holes.push_back(y);
    }
  }
  const PowerTail psi_tail = ground.power_tail(static_cast<double>(radius + 1));
  const PowerTail kappa_tail = kernel.power_tail(static_cast<double>(radius + 1 - phi.radius()));

  Totals outside;
  parallel_for(0, static_cast<long>(support.size()), cfg.parallel, [&](long i) {
    const double v = values[idx(i)];
    if (v == 0.0) return;
    const long x = support[idx(i)];
    SumAccumulator row;
    for (long y = -radius; y < lo; ++y) row.add(kappa[idx(x - y)] * psi_at(y));
    for (long y = hi + 1; y <= radius; ++y) row.add(kappa[idx(y - x)] * psi_at(y));
    for (long y : holes) row.add(kappa[idx(std::labs(x - y))] * psi_at(y));
    const TailSum tail = convolution_tail(psi_tail, kappa_tail, x, radius);
    row.add(tail.value);
    const double factor = v * v * psi_at(x);
    SumAccumulator scaled;
    scaled.sum = factor * row.sum;
    scaled.abs_sum = std::abs(factor) * row.abs_sum + std::abs(factor * row.sum) * 4e-16;
    scaled.count = row.count;
    outside.merge(scaled, std::abs(factor) * tail.err_bound);
  });
  if (outside.tail_err > cfg.pair_tail_tol) {
    throw ConvergenceError("gst_form: tail error " + std::to_string(outside.tail_err) +
                           " exceeds pair_tail_tol");
  }
  const double rel = kernel.relative_accuracy() + 2.0 * ground.relative_accuracy();
  SumAccumulator total;
  total.add(inside.sum);
  total.add(outside.sum.sum);
  const double err = rel * (inside.abs_sum + outside.sum.abs_sum) + inside.rounding_bound() +
                     outside.sum.rounding_bound() + outside.tail_err + total.rounding_bound();
  return {total.sum, err};
}

GstCheck gst_identity_residual(double sigma, double alpha, const LatticeFunction& phi, const FormConfig& cfg) {
  require_pair(sigma, alpha, "gst_identity_residual");
  const KernelEvaluator ground = shared_evaluator(-alpha, cfg.quad);
  const LatticeFunction product = phi.multiplied([&](long x) { return ground(x); });
  const Estimate q = q_form(sigma, product, cfg);
  const HardyWeight weight = HardyWeight::family(sigma, alpha, cfg.quad);
  SumAccumulator weighted;
  for (std::size_t i = 0; i < product.size(); ++i) {
    const double v = product.values()[i];
    weighted.add(weight(product.support()[i]) * v * v);
  }
  // φψ carries the relative error of ψ twice, as does w.
  const double product_err = 2.0 * ground.relative_accuracy();
  const Estimate rhs = gst_form(sigma, alpha, phi, cfg);
  GstCheck check;
  check.lhs = q.value - weighted.sum;
  check.rhs = rhs.value;
  check.residual = std::abs(check.lhs - check.rhs);
  const double lhs_err = q.err_bound + product_err * std::abs(q.value) +
                         (weight.relative_accuracy() + product_err) * weighted.abs_sum +
                         weighted.rounding_bound() + 4e-16 * std::abs(check.lhs);
  check.err_bound = lhs_err + rhs.err_bound + 4e-16 * std::abs(check.rhs);
  return check;
}

double null_sequence(long n, long x) {
  if (n < 2) throw DomainError("null_sequence: n must be >= 2");
  const long m = std::labs(x);
  if (m == 0) return 1.0;
  if (m >= n) return 0.0;
  const double v = 1.0 - std::sqrt(std::log(static_cast<double>(m)) / std::log(static_cast<double>(n)));
  return std::clamp(v, 0.0, 1.0);
}

LatticeFunction null_sequence_function(long n) {
  if (n < 2) throw DomainError("null_sequence: n must be >= 2");
  return LatticeFunction::sample([n](long x) { return null_sequence(n, x); }, -(n - 1), n - 1);
}

Estimate null_sequence_energy(double sigma, double alpha, long n, const FormConfig& cfg) {
  require_pair(sigma, alpha, "null_sequence_energy");
  if (n < 2) throw DomainError("null_sequence_energy: n must be >= 2");
  const long radius = std::max(cfg.truncation_radius, 10 * n);
  const KernelEvaluator kernel = shared_evaluator(sigma, cfg.quad);
  const KernelEvaluator ground = shared_evaluator(-alpha, cfg.quad);
  const std::vector<double> kappa = kernel.table(radius + n, cfg.parallel);
  const std::vector<double> psi = ground.table(radius, cfg.parallel);
  std::vector<double> e(idx(n));
  for (long x = 0; x < n; ++x) e[idx(x)] = null_sequence(n, x);

  // Pairs inside the support, over the unfolded window [-(n-1), n-1].
  const long width = 2 * n - 1;
  std::vector<long> support(idx(width));
  std::vector<double> values(idx(width));
  std::vector<double> weights(idx(width));
  for (long i = 0; i < width; ++i) {
    const long x = i - (n - 1);
    support[idx(i)] = x;
    values[idx(i)] = e[idx(std::labs(x))];
    weights[idx(i)] = psi[idx(std::labs(x))];
  }
  const SumAccumulator inside = weighted_pair_sum(support, weights, values, kappa, cfg.parallel);

  // Pairs with y outside the support; the summand is even in x, so x >= 0
  // is summed with multiplicity 2 for x > 0.
  const PowerTail psi_tail = ground.power_tail(static_cast<double>(radius + 1));
  const PowerTail kappa_tail = kernel.power_tail(static_cast<double>(radius + 2 - n));
  Totals outside;
  parallel_for(0, n, cfg.parallel, [&](long x) {
    double acc = 0.0;
    double acc_abs_count = 0.0;
    for (long m = n; m <= radius; ++m) acc += psi[idx(m)] * (kappa[idx(m - x)] + kappa[idx(m + x)]);
    acc_abs_count = static_cast<double>(2 * (radius - n + 1));
    const TailSum tail = convolution_tail(psi_tail, kappa_tail, x, radius);
    const double multiplicity = x == 0 ? 1.0 : 2.0;
    const double factor = multiplicity * e[idx(x)] * e[idx(x)] * psi[idx(x)];
    SumAccumulator part;
    part.sum = factor * (acc + tail.value);
    part.abs_sum = std::abs(part.sum);
    part.count = static_cast<std::size_t>(acc_abs_count);
    outside.merge(part, factor * tail.err_bound);
  });
  if (outside.tail_err > cfg.pair_tail_tol) {
    throw ConvergenceError("null_sequence_energy: tail error exceeds pair_tail_tol");
  }
  const double rel = kernel.relative_accuracy() + 2.0 * ground.relative_accuracy();
  const double total = inside.sum + outside.sum.sum;
  const double err = rel * (inside.abs_sum + outside.sum.abs_sum) + inside.rounding_bound() +
                     outside.sum.rounding_bound() + outside.tail_err + 4e-16 * std::abs(total);
  return {total, err};
}

std::vector<double> null_criticality_sums(double sigma, double alpha, const std::vector<long>& grid,
                                          const QuadratureSpec& quad) {
  require_pair(sigma, alpha, "null_criticality_sum");
  if (grid.empty()) throw DomainError("null_criticality_sum: empty grid");
  if (!std::is_sorted(grid.begin(), grid.end()) || grid.front() < 0) {
    throw DomainError("null_criticality_sum: grid must be increasing and nonnegative");
  }
  const KernelEvaluator ground = shared_evaluator(-alpha, quad);
  std::vector<double> sums;
  if (sigma == alpha) {
    sums.assign(grid.size(), ground(0));
    return sums;
  }
  const long top = grid.back();
  const std::vector<double> psi = ground.table(top);
  const std::vector<double> num = shared_evaluator(sigma - alpha, quad).table(top);
  double acc = psi[0] * num[0];
  long next = 1;
  for (long n : grid) {
    for (; next <= n; ++next) acc += 2.0 * psi[idx(next)] * num[idx(next)];
    sums.push_back(acc);
  }
  return sums;
}

LogFit log_fit(const std::vector<long>& grid, const std::vector<double>& sums) {
  if (grid.size() != sums.size() || grid.size() < 3) {
    throw DomainError("log_fit: needs at least three (N, sum) pairs");
  }
  const std::size_t k = grid.size();
  std::vector<double> t(k);
  double mean_t = 0.0;
  double mean_s = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (grid[i] < 1) throw DomainError("log_fit: grid entries must be >= 1");
    t[i] = std::log(static_cast<double>(grid[i]));
    mean_t += t[i];
    mean_s += sums[i];
  }
  mean_t /= static_cast<double>(k);
  mean_s /= static_cast<double>(k);
  double stt = 0.0;
  double sts = 0.0;
  double sss = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    stt += (t[i] - mean_t) * (t[i] - mean_t);
    sts += (t[i] - mean_t) * (sums[i] - mean_s);
    sss += (sums[i] - mean_s) * (sums[i] - mean_s);
  }
  LogFit fit;
  fit.slope = sts / stt;
  fit.intercept = mean_s - fit.slope * mean_t;
  double ssr = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = sums[i] - fit.intercept - fit.slope * t[i];
    ssr += r * r;
  }
  fit.slope_stderr = std::sqrt(ssr / static_cast<double>(k - 2) / stt);
  fit.r_squared = sss > 0.0 ? 1.0 - ssr / sss : 0.0;
  std::vector<double> increments;
  for (std::size_t i = 1; i < k; ++i) increments.push_back((sums[i] - sums[i - 1]) / (t[i] - t[i - 1]));
  double mean_inc = 0.0;
  for (double v : increments) mean_inc += v;
  mean_inc /= static_cast<double>(increments.size());
  for (double v : increments) {
    fit.increment_spread = std::max(fit.increment_spread, std::abs(v - mean_inc) / std::abs(mean_inc));
  }
  const bool divergent = fit.slope > 3.0 * fit.slope_stderr && fit.r_squared >= 0.999 &&
                         fit.increment_spread <= 0.2;
  fit.diagnosis = divergent ? "divergent-log" : "convergent";
  return fit;
}

double hardy_rayleigh(double sigma, const HardyWeight& weight, const LatticeFunction& phi, const FormConfig& cfg) {
  const Estimate q = q_form(sigma, phi, cfg);
  double denominator = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double v = phi.values()[i];
    denominator += weight(phi.support()[i]) * v * v;
  }
  if (!(denominator > 0.0)) throw DomainError("hardy_rayleigh: weighted norm of phi vanishes");
  return q.value / denominator;
}

}  // namespace fraclap
