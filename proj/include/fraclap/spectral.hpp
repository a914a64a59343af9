#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fraclap/hardy.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {

/// Sorted, nonempty index set: [-N, N] or the annulus {K < |x| <= N}.
class Window {
 public:
  static Window symmetric(long n);
  static Window annulus(long k, long n);
  explicit Window(std::vector<long> indices);

  const std::vector<long>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }

 private:
  std::vector<long> indices_;
};

/// Restriction of Q^σ to functions supported in a window:
/// A[x][x] = S_σ, A[x][y] = -κ_σ(x-y).
struct FormMatrix {
  Window window;
  Eigen::MatrixXd entries;
  double mass = 0.0;
};

inline constexpr std::size_t kMaxWindowSize = 4001;

FormMatrix build_form_matrix(double sigma, const Window& window,
                             const QuadratureSpec& quad = QuadratureSpec::from_environment(),
                             bool parallel = false);

/// Smallest eigenvalue of a symmetric matrix (LAPACK dsyevr).
/// DomainError if the matrix is not symmetric to 1e-14 of its max-norm.
double min_eigenvalue(const Eigen::MatrixXd& m);

/// min eig of A - diag(w) on [-N, N].
double hardy_matrix_check(double sigma, const HardyWeight& weight, long n,
                          const QuadratureSpec& quad = QuadratureSpec::from_environment(),
                          bool parallel = false);

/// min eig of A - (1+λ) diag(w) on {K < |x| <= N}.
double optimality_probe(double sigma, const HardyWeight& weight, double lambda, long k, long n,
                        const QuadratureSpec& quad = QuadratureSpec::from_environment(),
                        bool parallel = false);

/// N = 2K, 4K, 8K, ... below n_max, then n_max.
std::vector<long> probe_schedule(long k, long n_max);

struct ProbeRun {
  std::vector<long> sizes;
  std::vector<double> min_eigenvalues;
  std::optional<long> threshold;
};

/// Runs optimality_probe over probe_schedule and records the first N with a
/// negative minimum eigenvalue.
ProbeRun optimality_search(double sigma, const HardyWeight& weight, double lambda, long k, long n_max,
                           const QuadratureSpec& quad = QuadratureSpec::from_environment(),
                           bool parallel = false);

}  // namespace fraclap
