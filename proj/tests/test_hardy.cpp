#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fraclap/errors.hpp"
#include "fraclap/hardy.hpp"
#include "fraclap/specfun.hpp"

using namespace fraclap;

namespace {
bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }
}  // namespace

TEST_CASE("CR weight reference values") {
  // 40-digit evaluations of the four-Gamma formula.
  CHECK(rel_close(weight_cr(0.25, 0), 0.58578643762690495, 1e-13));
  CHECK(rel_close(weight_cr(0.25, 1), 0.13947296133973927, 1e-13));
  CHECK(rel_close(weight_cr(0.25, 100), 0.013999962276533293, 1e-13));
  CHECK(rel_close(weight_cr(0.1, 7), 0.33050779664068025, 1e-13));
  CHECK(rel_close(weight_cr(0.45, 1000), 8.3188994066199201e-6, 1e-13));
  CHECK(weight_cr(0.25, -9) == weight_cr(0.25, 9));
  CHECK_THROWS_AS(weight_cr(0.5, 1), DomainError);
  CHECK_THROWS_AS(weight_cr(0.0, 1), DomainError);
}

TEST_CASE("c_sigma") {
  const double c = c_sigma(0.25);
  const double expected =
      std::sqrt(2.0) * std::exp(2.0 * (specfun::log_gamma(0.375) - specfun::log_gamma(0.125)));
  CHECK(rel_close(c, expected, 1e-14));
  CHECK(rel_close(c, 0.13999967745248279, 1e-13));
  CHECK(std::abs(c_sigma(1e-9) - 1.0) < 1e-6);
  // Near σ = 1/2 the pole of Γ((1-2σ)/4) drives c_σ to 0 with c_σ Γ((1-2σ)/4)² -> 2π.
  CHECK(c_sigma(0.45) > c_sigma(0.49));
  CHECK(c_sigma(0.49) > c_sigma(0.499));
  for (double s : {0.49, 0.499, 0.4999}) {
    const double pole = std::exp(2.0 * specfun::log_gamma((1.0 - 2.0 * s) / 4.0));
    CHECK(std::abs(c_sigma(s) * pole / (2.0 * std::numbers::pi) - 1.0) < 5.0 * (0.5 - s));
  }
  for (double s : {0.1, 0.25, 0.4}) {
    const double scaled = std::pow(1e6, 2.0 * s) * weight_cr(s, 1000000);
    CHECK(std::abs(scaled - c_sigma(s)) <= 1e-5 * c_sigma(s));
  }
}

TEST_CASE("CR weight positivity and recurrence") {
  for (double s : {0.05, 0.25, 0.45}) {
    for (long x = 0; x <= 2000; x += 37) {
      CHECK(weight_cr(s, x) > 0.0);
      const double a = x + (1 - 2 * s) / 4;
      const double b = x + (3 - 2 * s) / 4;
      const double c = x + (3 + 2 * s) / 4;
      const double d = x + (1 + 2 * s) / 4;
      CHECK(std::abs(weight_cr(s, x + 1) / weight_cr(s, x) - a * b / (c * d)) <= 1e-13);
    }
  }
}

TEST_CASE("family weight coincides with the CR weight at the critical order") {
  for (double s : {0.05, 0.1, 0.25, 0.4, 0.45}) {
    const double a = critical_alpha(s);
    for (long x : {0L, 1L, 2L, 5L, 17L, 100L, 999L, 10000L}) {
      CAPTURE(s);
      CAPTURE(x);
      CHECK(rel_close(weight_family(s, a, x), weight_cr(s, x), 1e-10));
    }
  }
  for (long x = 0; x <= 100; ++x) CHECK(rel_close(weight_family(0.25, 0.375, x), weight_cr(0.25, x), 1e-10));
}

TEST_CASE("degenerate family weight") {
  CHECK(weight_family(0.3, 0.3, 3) == 0.0);
  CHECK(weight_family(0.3, 0.3, 0) > 0.0);
  CHECK(weight_family(0.2, 0.3, 4) == weight_family(0.2, 0.3, -4));
  CHECK_THROWS_AS(weight_family(0.3, 0.2, 1), DomainError);
  CHECK_THROWS_AS(leading_constant(0.3, 0.3), DomainError);
}

TEST_CASE("leading constants") {
  for (double s : {0.1, 0.25, 0.4}) CHECK(rel_close(leading_constant(s, critical_alpha(s)), c_sigma(s), 1e-8));
  const double l = leading_constant(0.25, 0.3);
  CHECK(l > 0.0);
  CHECK(l < c_sigma(0.25));
  for (double a : {0.3, 0.4, 0.45}) {
    const double direct = std::pow(1e5, 0.5) * weight_family(0.25, a, 100000);
    CHECK(std::abs(direct / leading_constant(0.25, a) - 1.0) <= 1e-3);
  }
}

TEST_CASE("constant scan") {
  for (double s : {0.1, 0.25}) {
    const ConstantScan scan = constant_scan(s, alpha_grid(s));
    CHECK(std::abs(scan.argmax - critical_alpha(s)) <= 1e-3 + 1e-12);
    CHECK(std::abs(scan.maximum / c_sigma(s) - 1.0) <= 1e-6);
    // The constant vanishes linearly at both ends of (σ, 1/2), so adjacent
    // entries are compared on the scale of the table maximum.
    for (std::size_t i = 1; i < scan.constants.size(); ++i) {
      CHECK(std::abs(scan.constants[i] - scan.constants[i - 1]) < 0.05 * scan.maximum);
    }
  }
  const auto grid = alpha_grid(0.25);
  CHECK(grid.front() == doctest::Approx(0.251).epsilon(1e-12));
  CHECK(grid.back() == doctest::Approx(0.499).epsilon(1e-12));
  CHECK_THROWS_AS(constant_scan(0.25, {}), DomainError);
}

TEST_CASE("weight objects") {
  const HardyWeight cr = HardyWeight::cr(0.25);
  CHECK(cr(7) == weight_cr(0.25, 7));
  CHECK(cr.scaled(2.0)(7) == 2.0 * weight_cr(0.25, 7));
  CHECK(rel_close(cr.leading_constant(), c_sigma(0.25), 1e-15));
  const HardyWeight fam = HardyWeight::family(0.25, 0.3);
  CHECK(fam(4) == weight_family(0.25, 0.3, 4));
  CHECK(HardyWeight::family(0.25, 0.25).leading_constant() == 0.0);
  const auto t = cr.table(10);
  CHECK(t.size() == 11);
  CHECK(t[3] == cr(3));
}
