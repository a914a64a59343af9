#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "fraclap/errors.hpp"
#include "fraclap/forms.hpp"
#include "fraclap/operator.hpp"
#include "fraclap/spectral.hpp"

using namespace fraclap;

namespace {
double eigen_min(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}
}  // namespace

TEST_CASE("windows") {
  CHECK(Window::symmetric(2).indices() == std::vector<long>{-2, -1, 0, 1, 2});
  CHECK(Window::annulus(1, 3).indices() == std::vector<long>{-3, -2, 2, 3});
  CHECK_THROWS_AS(Window(std::vector<long>{}), DomainError);
  CHECK_THROWS_AS(Window(std::vector<long>{2, 1}), DomainError);
  CHECK_THROWS_AS(Window::annulus(5, 5), DomainError);
  CHECK_THROWS_AS(build_form_matrix(0.25, Window::symmetric(3000)), DomainError);
}

TEST_CASE("form matrix structure") {
  const double s = 0.3;
  const FormMatrix one = build_form_matrix(s, Window(std::vector<long>{0}));
  CHECK(one.entries.rows() == 1);
  CHECK(one.entries(0, 0) == total_mass_estimate(s).value);
  CHECK(min_eigenvalue(one.entries) == one.entries(0, 0));

  const FormMatrix two = build_form_matrix(s, Window(std::vector<long>{0, 1}));
  const double a = 0.7;
  const double b = -1.3;
  Eigen::Vector2d v(a, b);
  const double quadratic = v.dot(two.entries * v);
  CHECK(std::abs(quadratic - q_form(s, LatticeFunction({0, 1}, {a, b})).value) <= 1e-12);

  const FormMatrix m = build_form_matrix(s, Window::symmetric(20));
  CHECK((m.entries - m.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
    CHECK(m.entries(i, i) == m.mass);
    for (Eigen::Index j = 0; j < m.entries.cols(); ++j) if (i != j) CHECK(m.entries(i, j) < 0.0);
  }
}

TEST_CASE("quadratic form agreement on random functions") {
  const double s = 0.25;
  for (long n : {10L, 50L, 200L}) {
    const FormMatrix m = build_form_matrix(s, Window::symmetric(n));
    for (std::uint64_t t = 0; t < 50; ++t) {
      const LatticeFunction phi = LatticeFunction::random(t + static_cast<std::uint64_t>(n), -n, n);
      const Eigen::Map<const Eigen::VectorXd> v(phi.values().data(), static_cast<Eigen::Index>(phi.size()));
      CHECK(std::abs(v.dot(m.entries * v) - q_form(s, phi).value) <= 1e-10);
    }
  }
}

TEST_CASE("minimum eigenvalue solver") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d.diagonal() << 3.0, 1.0, 2.0;
  CHECK(std::abs(min_eigenvalue(d) - 1.0) <= 1e-15);
  Eigen::MatrixXd asym = d;
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(min_eigenvalue(asym), DomainError);

  // Cross-check against Eigen's self-adjoint solver.
  for (double s : {0.1, 0.4}) {
    const FormMatrix m = build_form_matrix(s, Window::symmetric(50));
    const double ours = min_eigenvalue(m.entries);
    CHECK(ours > 0.0);
    CHECK(std::abs(ours - eigen_min(m.entries)) <= 1e-10 * m.entries.cwiseAbs().maxCoeff());
    // Rayleigh quotient of any vector bounds the minimum from above.
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(m.entries.rows());
    CHECK(ours <= ones.dot(m.entries * ones) / ones.squaredNorm());
  }
}

TEST_CASE("Hardy matrix checks") {
  for (double s : {0.1, 0.25, 0.4}) {
    double previous = 1e300;
    for (long n : {50L, 200L, 800L}) {
      const double e = hardy_matrix_check(s, HardyWeight::cr(s), n);
      CAPTURE(s);
      CAPTURE(n);
      CHECK(e >= -1e-9);
      CHECK(e <= previous + 1e-12);
      previous = e;
    }
  }
  const double full = hardy_matrix_check(0.25, HardyWeight::cr(0.25), 200);
  const double half = hardy_matrix_check(0.25, HardyWeight::cr(0.25).scaled(0.5), 200);
  CHECK(half > full);
  for (double s : {0.1, 0.25}) {
    for (double a : {s + 0.02, critical_alpha(s), 0.48}) {
      CHECK(hardy_matrix_check(s, HardyWeight::family(s, a), 200) >= -1e-9);
    }
  }
}

TEST_CASE("optimality probe") {
  const HardyWeight w = HardyWeight::cr(0.25);
  double previous = 1e300;
  for (long n : {10L, 40L, 160L, 640L}) {
    const double e = optimality_probe(0.25, w, 0.2, 5, n);
    CHECK(e <= previous + 1e-12);
    previous = e;
    CHECK(optimality_probe(0.25, w, -0.5, 5, n) > 0.0);
  }
  CHECK(probe_schedule(5, 100) == std::vector<long>{10, 20, 40, 80, 100});
  CHECK(probe_schedule(5, 80) == std::vector<long>{10, 20, 40, 80});
  const ProbeRun run = optimality_search(0.25, w, -0.5, 5, 200);
  CHECK_FALSE(run.threshold.has_value());
  CHECK(run.sizes.size() == run.min_eigenvalues.size());
}
