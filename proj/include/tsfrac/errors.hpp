#pragma once

#include <stdexcept>
#include <string>

namespace tsfrac {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point or set was required to lie on the time scale (or in T^kappa) and did not.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Integration limits given in the wrong order.
class OrderError : public Error {
 public:
  using Error::Error;
};

/// Invalid numeric parameter (order <= 0, beta out of range, missing bound, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The grid cannot resolve the request (off-grid endpoint, stencil too short).
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// psi^Delta vanished where it is used as a divisor.
class SingularWeightError : public Error {
 public:
  using Error::Error;
};

/// Gamma/binomial evaluated at a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A staged operator produced a non-finite intermediate value.
class PropagationError : public Error {
 public:
  using Error::Error;
};

/// A right-hand side returned a non-finite value at a node.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// The control functional cannot be inverted (zero gain or zero kernel).
class NonInvertibleError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document (JSON schema, CSV alignment, unknown key).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Unknown identity requested from the audit catalog.
class CatalogError : public Error {
 public:
  using Error::Error;
};

}  // namespace tsfrac
