#pragma once

#include <stdexcept>
#include <string>

namespace csqs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user-supplied parameters (t^2 + r^2 != 1, malformed grid, ...).
class InvalidParameters : public Error {
 public:
  using Error::Error;
};

// A truncated Fock representation would discard more than the configured tail mass.
class TailMassError : public Error {
 public:
  using Error::Error;
};

// The superposition annihilates the input or the norm is numerically zero.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

// Formula evaluated outside the domain where it is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Phase-space grid does not capture the state (normalization off by more than eps_grid).
class GridError : public Error {
 public:
  using Error::Error;
};

// Covariance matrix violates the uncertainty bound det >= 1.
class CovarianceError : public Error {
 public:
  using Error::Error;
};

}  // namespace csqs
