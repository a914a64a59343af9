#pragma once

#include <stdexcept>

namespace fraclap {

/// An argument lies outside the domain on which an operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A caller-supplied decay certificate does not hold, or does not place the
/// function in the weighted space an operation needs.
class CertificationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative numerical procedure (quadrature, eigensolver) failed to reach
/// its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fraclap
