#include <cmath>
#include <vector>

#include "doctest.h"
#include "fraclap/errors.hpp"
#include "fraclap/operator.hpp"

using namespace fraclap;

namespace {
const QuadratureSpec kQuad;

double pairing(double sigma, const LatticeFunction& f, const LatticeFunction& g, double* err) {
  double sum = 0.0;
  *err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Estimate e = apply_fractional(sigma, f, g.support()[i], 200, kQuad);
    sum += e.value * g.values()[i];
    *err += e.err_bound * std::abs(g.values()[i]);
  }
  return sum;
}
}  // namespace

TEST_CASE("lattice function validation") {
  CHECK_THROWS_AS(LatticeFunction({1, 1}, {1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(LatticeFunction({1, 2}, {1.0}), DomainError);
  const LatticeFunction f({-2, 3}, {0.5, -1.0});
  CHECK(f(3) == -1.0);
  CHECK(f(0) == 0.0);
  CHECK(f.radius() == 3);
  CHECK(LatticeFunction::random(5, -3, 3).values() == LatticeFunction::random(5, -3, 3).values());
  const LatticeFunction r = LatticeFunction::random(9, -50, 50);
  for (double v : r.values()) CHECK((v >= -1.0 && v < 1.0));
}

TEST_CASE("apply_fractional on point masses and constants") {
  for (double s : {0.1, 0.25, 0.7}) {
    const Estimate e = apply_fractional(s, LatticeFunction::indicator(0), 0, 20, kQuad);
    const Estimate mass = total_mass_estimate(s, kQuad);
    CHECK(std::abs(e.value - mass.value) <= e.err_bound + mass.err_bound);
  }
  // Constant on a wide window: only the mass beyond the window survives.
  const long w = 5000;
  const LatticeFunction one = LatticeFunction::sample([](long) { return 1.0; }, -w, w);
  const Estimate e = apply_fractional(0.25, one, 0, w + 10, kQuad);
  CHECK(e.value >= -e.err_bound);
  CHECK(e.value <= tail_sum_bound(0.25, w) + e.err_bound);
  CHECK_THROWS_AS(apply_fractional(0.25, one, 0, w, kQuad), DomainError);
}

TEST_CASE("linearity and translation equivariance") {
  const LatticeFunction f = LatticeFunction::random(1, -10, 10);
  const LatticeFunction g = LatticeFunction::random(2, -4, 15);
  const LatticeFunction h = f.scaled(2.5).plus(g.scaled(-1.5));
  for (long x : {-12L, 0L, 3L, 40L}) {
    const double lhs = apply_fractional(0.3, h, x, 100, kQuad).value;
    const double rhs = 2.5 * apply_fractional(0.3, f, x, 100, kQuad).value -
                       1.5 * apply_fractional(0.3, g, x, 100, kQuad).value;
    CHECK(std::abs(lhs - rhs) <= 1e-12);
    const double shifted = apply_fractional(0.3, f.shifted(17), x + 17, 150, kQuad).value;
    CHECK(std::abs(shifted - apply_fractional(0.3, f, x, 150, kQuad).value) <= 1e-12);
  }
}

TEST_CASE("form symmetry and positivity") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const LatticeFunction f = LatticeFunction::random(seed, -8, 8);
    const LatticeFunction g = LatticeFunction::random(seed + 100, -3, 12);
    double ef = 0.0;
    double eg = 0.0;
    const double a = pairing(0.35, f, g, &ef);
    const double b = pairing(0.35, g, f, &eg);
    CHECK(std::abs(a - b) <= ef + eg);
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const LatticeFunction f = LatticeFunction::random(1000 + seed, -30, 30);
    double err = 0.0;
    CHECK(pairing(0.25, f, f, &err) >= -1e-10);
  }
}

TEST_CASE("decay functions") {
  CHECK_THROWS_AS(DecayFunction([](long x) { return 1.0 + std::abs(static_cast<double>(x)); }, 0.0, 1.0),
                  CertificationError);
  const DecayFunction one = DecayFunction::constant(1.0);
  CHECK_NOTHROW(one.require_membership(0.1));
  CHECK_THROWS_AS(one.require_membership(0.0), CertificationError);

  const Estimate e = apply_fractional_decay(0.3, one, 4, 100000, kQuad);
  CHECK(std::abs(e.value) <= e.err_bound);
  const Estimate k = apply_fractional_decay(0.3, DecayFunction::from_kernel(shared_evaluator(-0.35, kQuad)), 0, 10000,
                                            kQuad);
  CHECK(std::isfinite(k.value));
}

TEST_CASE("truncation bounds shrink with the radius") {
  const DecayFunction u = DecayFunction::from_kernel(shared_evaluator(-0.3, kQuad));
  std::vector<double> bounds;
  for (long r : {1000L, 10000L, 100000L}) bounds.push_back(apply_fractional_decay(0.2, u, 5, r, kQuad, false).err_bound);
  CHECK(bounds[1] < bounds[0]);
  CHECK(bounds[2] < bounds[1]);
  // Slope of log(bound) against log(R) is the tail rate -2σ' with σ' > 0.
  const double slope = std::log(bounds[2] / bounds[0]) / std::log(100.0);
  CHECK(slope < -0.1);
  CHECK(slope > -1.0);
}

TEST_CASE("negative powers") {
  const KernelEvaluator k = shared_evaluator(-0.3, kQuad);
  for (long x : {0L, 1L, -7L, 40L}) {
    const Estimate e = apply_negative_power(0.3, LatticeFunction::indicator(0), x, kQuad);
    CHECK(std::abs(e.value - k(x)) <= e.err_bound);
  }
  const Estimate two = apply_negative_power(0.3, LatticeFunction({0, 1}, {1.0, 1.0}), 0, kQuad);
  CHECK(std::abs(two.value - (k(0) + k(1))) <= two.err_bound);
  CHECK_THROWS_AS(apply_negative_power(0.6, LatticeFunction::indicator(0), 0, kQuad), DomainError);
}

TEST_CASE("composition of negative and positive powers") {
  // Δ^σ (κ_{-α} restricted to [-W, W]) exceeds κ_{σ-α} by Σ_{|y|>W} κ_σ(x-y) κ_{-α}(y) >= 0.
  const double sigma = 0.25;
  const double alpha = 0.35;
  const long w = 3000;
  const LatticeFunction windowed =
      LatticeFunction::sample([](long y) { return apply_negative_power(0.35, LatticeFunction::indicator(0), y).value; },
                              -w, w);
  const KernelEvaluator ks = shared_evaluator(sigma, kQuad);
  const KernelEvaluator ka = shared_evaluator(-alpha, kQuad);
  const double cs = certified_kernel_constant(ks, w / 2);
  const double ca = certified_kernel_constant(ka, w / 2);
  const KernelEvaluator target = shared_evaluator(sigma - alpha, kQuad);
  for (long x : {0L, 3L}) {
    const Estimate e = apply_fractional(sigma, windowed, x, w + 20, kQuad);
    double missing = 0.0;
    for (long y = w + 1; y <= 100 * w; ++y) {
      const double z = static_cast<double>(y);
      missing += ca * std::pow(z, -1.0 + 2.0 * alpha) *
                 cs * (std::pow(z - x, -1.0 - 2.0 * sigma) + std::pow(z + x, -1.0 - 2.0 * sigma));
    }
    const double p = -2.0 - 2.0 * sigma + 2.0 * alpha;
    missing += 2.0 * ca * cs * std::pow(0.99, -1.0 - 2.0 * sigma) * std::pow(100.0 * w, p + 1.0) / (-(p + 1.0));
    const double diff = e.value - target(x);
    CHECK(diff >= -e.err_bound);
    CHECK(diff <= missing + e.err_bound);
  }
}

TEST_CASE("kernel identity examples") {
  const IdentityCheck c = verify_kappa_identity(0.25, 0.375, 0, 100000, kQuad);
  CHECK(c.passed());
  CHECK(c.err_bound <= 1e-6);
  const IdentityCheck zero = verify_kappa_identity(0.3, 0.3, 5, 100000, kQuad);
  CHECK(zero.target == 0.0);
  CHECK(zero.passed());
  std::vector<double> residuals;
  for (long r : {1000L, 10000L, 100000L}) residuals.push_back(verify_kappa_identity(0.2, 0.3, 5, r, kQuad, false).residual);
  CHECK(residuals[1] < residuals[0]);
  CHECK(residuals[2] < residuals[1]);
  CHECK_THROWS_AS(verify_kappa_identity(0.3, 0.2, 0), DomainError);
}

TEST_CASE("kernel identity grid") {
  const double grid[] = {0.1, 0.2, 0.25, 0.3, 0.4};
  for (double s : grid) {
    for (double a : grid) {
      if (s > a) continue;
      for (long x : {0L, 1L, -1L, 5L, -5L, 20L, -20L}) {
        const IdentityCheck c = verify_kappa_identity(s, a, x, 100000, kQuad);
        CAPTURE(s);
        CAPTURE(a);
        CAPTURE(x);
        CHECK(c.passed());
        CHECK(c.err_bound <= 1e-6);
      }
    }
  }
}

TEST_CASE("weighted l1 partial norms") {
  const auto delta = b_norm([](long x) { return x == 0 ? 1.0 : 0.0; }, 0.3, {0, 10, 1000});
  for (double v : delta) CHECK(v == 1.0);
  const KernelEvaluator k = shared_evaluator(0.3, kQuad);
  const auto kn = b_norm([&](long x) { return k(x); }, 0.3, {10000, 100000});
  CHECK(kn[1] - kn[0] < 1e-6);
  const auto ones = b_norm([](long) { return 1.0; }, 0.3, {1000, 10000, 100000});
  const double inc1 = ones[1] - ones[0];
  const double inc2 = ones[2] - ones[1];
  // Increments shrink by 10^{-0.6} per decade.
  CHECK(std::abs(inc2 / inc1 - std::pow(10.0, -0.6)) < 0.01);
}
