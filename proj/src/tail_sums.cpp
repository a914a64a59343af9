#include "fraclap/tail_sums.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

#include "fraclap/errors.hpp"

namespace fraclap {
namespace {

// B_{2j} / (2j)!, j = 1..12.
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    8.3333333333333333333e-2,  -1.3888888888888888889e-3, 3.3068783068783068783e-5,
    -8.2671957671957671958e-7, 2.0876756987868098979e-8,  -5.2841901386874931848e-10,
    1.3382536530684678833e-11, -3.3896802963225828668e-13, 8.5860620562778445641e-15,
    -2.174868698558061873e-16, 5.5090028283602295152e-18, -1.3954464685812523341e-19};

}  // namespace

double PowerTail::operator()(double z) const {
  z = std::abs(z);
  double sum = 0.0;
  for (std::size_t k = 0; k < coefficients.size(); ++k) sum += coefficients[k] * std::pow(z, -exponents[k]);
  return sum;
}

double PowerTail::truncation_ratio() const {
  if (coefficients.size() < 2) return 0.0;
  const double lead = std::abs(coefficients.front() * std::pow(valid_from, -exponents.front()));
  const double last = std::abs(coefficients.back() * std::pow(valid_from, -exponents.back()));
  return lead > 0.0 ? last / lead : 0.0;
}

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0)) {
    throw DomainError("hurwitz_zeta: requires s > 1 and q > 0, got s = " + std::to_string(s) +
                      ", q = " + std::to_string(q));
  }
  const double start = std::max(10.0, s);
  double direct = 0.0;
  double a = q;
  while (a < start) {
    direct += std::pow(a, -s);
    a += 1.0;
  }
  const double a_pow = std::pow(a, -s);
  double sum = a * a_pow / (s - 1.0) + 0.5 * a_pow;
  // Euler–Maclaurin corrections Σ B_{2j}/(2j)! · s(s+1)...(s+2j-2) a^{-s-2j+1}.
  double rising = s;
  double power = a_pow / a;
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    const double term = kBernoulliOverFactorial[j] * rising * power;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    const double next = s + 2.0 * static_cast<double>(j) + 1.0;
    rising *= next * (next + 1.0);
    power /= a * a;
  }
  return direct + sum;
}

TailSum power_tail_sum(const PowerTail& p, long radius) {
  const double q = static_cast<double>(radius) + 1.0;
  if (q < p.valid_from) throw DomainError("power_tail_sum: radius below the series range");
  TailSum out;
  for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
    out.value += 2.0 * p.coefficients[i] * hurwitz_zeta(p.exponents[i], q);
  }
  out.err_bound = std::abs(out.value) * (p.truncation_ratio() + 1e-14);
  return out;
}

TailSum convolution_tail(const PowerTail& p, const PowerTail& q, long x, long radius) {
  const double shift = static_cast<double>(std::labs(x));
  const double first = static_cast<double>(radius) + 1.0;
  if (first < p.valid_from || first - shift < q.valid_from) {
    throw DomainError("convolution_tail: radius " + std::to_string(radius) +
                      " too small for the series at x = " + std::to_string(x));
  }
  const double ratio = shift / first;
  TailSum out;
  double magnitude = 0.0;
  for (std::size_t j = 0; j < q.coefficients.size(); ++j) {
    const double f = q.exponents[j];
    // (f)_m / m! · x^m for even m, summed against ζ(e_i + f + m, R + 1).
    double binom = 1.0;
    double x_power = 1.0;
    for (int m = 0; m < 400; m += 2) {
      if (m > 0) {
        binom *= (f + m - 2.0) * (f + m - 1.0) / ((m - 1.0) * m);
        x_power *= shift * shift;
      }
      double block = 0.0;
      for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
        block += p.coefficients[i] * hurwitz_zeta(p.exponents[i] + f + m, first);
      }
      const double term = 2.0 * q.coefficients[j] * binom * x_power * block;
      out.value += term;
      magnitude += std::abs(term);
      if (shift == 0.0) break;
      const double next_scale = binom * (f + m) * (f + m + 1.0) / ((m + 1.0) * (m + 2.0)) *
                                std::pow(ratio, m + 2);
      if (next_scale < 1e-18) break;
    }
  }
  out.err_bound = magnitude * (p.truncation_ratio() + q.truncation_ratio() + 1e-14);
  return out;
}

}  // namespace fraclap
