#include "fraclap/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "fraclap/errors.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/operator.hpp"
#include "fraclap/parallel.hpp"

namespace fraclap {

Window::Window(std::vector<long> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw DomainError("Window: empty index set");
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i] <= indices_[i - 1]) throw DomainError("Window: indices must be strictly increasing");
  }
}

Window Window::symmetric(long n) {
  if (n < 0) throw DomainError("Window: N must be >= 0");
  std::vector<long> idx;
  for (long x = -n; x <= n; ++x) idx.push_back(x);
  return Window(std::move(idx));
}

Window Window::annulus(long k, long n) {
  if (k < 0 || n <= k) throw DomainError("Window: annulus needs 0 <= K < N");
  std::vector<long> idx;
  for (long x = -n; x < -k; ++x) idx.push_back(x);
  for (long x = k + 1; x <= n; ++x) idx.push_back(x);
  return Window(std::move(idx));
}

FormMatrix build_form_matrix(double sigma, const Window& window, const QuadratureSpec& quad, bool parallel) {
  if (window.size() > kMaxWindowSize) {
    throw DomainError("build_form_matrix: window larger than " + std::to_string(kMaxWindowSize));
  }
  const auto& idx = window.indices();
  const long span = idx.back() - idx.front();
  const std::vector<double> kappa = shared_evaluator(sigma, quad).table(span);
  const double mass = total_mass_estimate(sigma, quad).value;
  const long m = static_cast<long>(idx.size());
  Eigen::MatrixXd a(m, m);
  parallel_for(0, m, parallel, [&](long i) {
    for (long j = 0; j < m; ++j) {
      a(i, j) = i == j ? mass : -kappa[static_cast<std::size_t>(std::labs(idx[i] - idx[j]))];
    }
  });
  return {window, std::move(a), mass};
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw DomainError("min_eigenvalue: matrix must be square and nonempty");
  const double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-14 * scale) {
    throw DomainError("min_eigenvalue: matrix is not symmetric");
  }
  const lapack_int n = static_cast<lapack_int>(m.rows());
  Eigen::MatrixXd a = m;
  lapack_int found = 0;
  double w = 0.0;
  double z = 0.0;
  lapack_int isuppz[2] = {0, 0};
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'N', 'I', 'L', n, a.data(), n, 0.0, 0.0, 1, 1,
                                         0.0, &found, &w, &z, 1, isuppz);
  if (info != 0 || found != 1) {
    throw ConvergenceError("min_eigenvalue: LAPACK dsyevr failed with info = " + std::to_string(info));
  }
  return w;
}

namespace {

double weighted_min_eigenvalue(double sigma, const HardyWeight& weight, double factor, const Window& window,
                               const QuadratureSpec& quad, bool parallel) {
  FormMatrix fm = build_form_matrix(sigma, window, quad, parallel);
  const auto& idx = window.indices();
  long top = 0;
  for (long x : idx) top = std::max(top, std::labs(x));
  const std::vector<double> w = weight.table(top);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    fm.entries(k, k) -= factor * w[static_cast<std::size_t>(std::labs(idx[i]))];
  }
  return min_eigenvalue(fm.entries);
}

}  // namespace

double hardy_matrix_check(double sigma, const HardyWeight& weight, long n, const QuadratureSpec& quad,
                          bool parallel) {
  return weighted_min_eigenvalue(sigma, weight, 1.0, Window::symmetric(n), quad, parallel);
}

double optimality_probe(double sigma, const HardyWeight& weight, double lambda, long k, long n,
                        const QuadratureSpec& quad, bool parallel) {
  return weighted_min_eigenvalue(sigma, weight, 1.0 + lambda, Window::annulus(k, n), quad, parallel);
}

std::vector<long> probe_schedule(long k, long n_max) {
  if (k < 1 || n_max <= k) throw DomainError("probe_schedule: needs 1 <= K < N_max");
  std::vector<long> sizes;
  for (long n = 2 * k; n < n_max; n *= 2) sizes.push_back(n);
  sizes.push_back(n_max);
  return sizes;
}

ProbeRun optimality_search(double sigma, const HardyWeight& weight, double lambda, long k, long n_max,
                           const QuadratureSpec& quad, bool parallel) {
  ProbeRun run;
  for (long n : probe_schedule(k, n_max)) {
    const double e = optimality_probe(sigma, weight, lambda, k, n, quad, parallel);
    run.sizes.push_back(n);
    run.min_eigenvalues.push_back(e);
    if (e < 0.0) {
      run.threshold = n;
      break;
    }
  }
  return run;
}

}  // namespace fraclap
