#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "fraclap/errors.hpp"
#include "fraclap/specfun.hpp"

namespace fraclap::specfun {
namespace {

constexpr double kRescaleAbove = 1e200;

bool use_series(long n, double z) { return z < 2.0 || z * z < 40.0 * (static_cast<double>(n) + 1.0); }

bool use_hankel(long n, double z) {
  const double nd = static_cast<double>(n);
  return z >= 30.0 && z >= nd * nd;
}

// Power series Σ (z²/4)^k / (k! (n+k)!) with the exponential scaling folded
// into the prefactor.
double series(long n, double z) {
  const double nd = static_cast<double>(n);
  const double log_prefactor = -z + nd * std::log(0.5 * z) - log_gamma(nd + 1.0);
  const double q = 0.25 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * (nd + k));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::exp(log_prefactor + std::log(sum));
}

// Large-argument expansion e^{-z} I_n(z) ~ (2πz)^{-1/2} Σ (-1)^k a_k(n) z^{-k}.
double hankel(long n, double z) {
  const double mu = 4.0 * static_cast<double>(n) * static_cast<double>(n);
  double term = 1.0;
  double sum = 1.0;
  double previous = 1.0;
  for (int k = 1; k < 80; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * z);
    const double magnitude = std::abs(term);
    if (magnitude > previous) break;
    sum += term;
    if (magnitude < 1e-17 * std::abs(sum)) break;
    previous = magnitude;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

long miller_start(long n, double z) {
  const double nd = static_cast<double>(n);
  return static_cast<long>(std::ceil(std::sqrt(nd * nd + 80.0 * z))) + 30;
}

// Miller's downward recurrence I_{k-1} = (2k/z) I_k + I_{k+1}, normalized by
// I_0 + 2 Σ_{k≥1} I_k = e^z.
double miller(long n, double z) {
  const long start = miller_start(n, z);
  double upper = 0.0;
  double current = 1e-30;
  double wanted = n == start ? current : 0.0;
  double sum = 0.0;
  for (long k = start; k >= 1; --k) {
    const double lower = (2.0 * static_cast<double>(k) / z) * current + upper;
    sum += 2.0 * current;
    upper = current;
    current = lower;
    if (k - 1 == n) wanted = current;
    if (current > kRescaleAbove) {
      upper /= kRescaleAbove;
      current /= kRescaleAbove;
      sum /= kRescaleAbove;
      wanted /= kRescaleAbove;
    }
  }
  sum += current;
  return wanted / sum;
}

void require_argument(double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw DomainError("scaled_bessel_i: argument must be finite and >= 0, got " +
                      std::to_string(z));
  }
}

}  // namespace

double scaled_bessel_i(long n, double z) {
  require_argument(z);
  n = std::labs(n);
  if (z == 0.0) return n == 0 ? 1.0 : 0.0;
  if (use_series(n, z)) return series(n, z);
  if (use_hankel(n, z)) return hankel(n, z);
  return miller(n, z);
}

std::vector<double> scaled_bessel_i_row(long n_max, double z) {
  require_argument(z);
  if (n_max < 0) throw DomainError("scaled_bessel_i_row: n_max must be >= 0");
  std::vector<double> row(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (z == 0.0) {
    row[0] = 1.0;
    return row;
  }
  if (z < 2.0) {
    for (long k = 0; k <= n_max; ++k) row[static_cast<std::size_t>(k)] = series(k, z);
    return row;
  }
  const long start = miller_start(n_max, z);
  double upper = 0.0;
  double current = 1e-30;
  double sum = 0.0;
  if (start <= n_max) row[static_cast<std::size_t>(start)] = current;
  for (long k = start; k >= 1; --k) {
    const double lower = (2.0 * static_cast<double>(k) / z) * current + upper;
    sum += 2.0 * current;
    upper = current;
    current = lower;
    if (k - 1 <= n_max) row[static_cast<std::size_t>(k - 1)] = current;
    if (current > kRescaleAbove) {
      upper /= kRescaleAbove;
      current /= kRescaleAbove;
      sum /= kRescaleAbove;
      for (long j = k - 1; j <= n_max; ++j) row[static_cast<std::size_t>(j)] /= kRescaleAbove;
    }
  }
  sum += current;
  for (double& v : row) v /= sum;
  return row;
}

double heat_kernel(double t, long x) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("heat_kernel: t must be finite and >= 0, got " + std::to_string(t));
  }
  return scaled_bessel_i(x, 2.0 * t);
}

}  // namespace fraclap::specfun
