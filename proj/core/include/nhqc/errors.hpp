#pragma once

#include <stdexcept>
#include <string>

namespace nhqc {

// Operand dimensions do not fit the operation.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An input violates a documented precondition (non-Hermitian generator, bad angle, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// User-supplied configuration is inconsistent (grids, step sizes, unknown names).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical invariant was violated during a computation (trace drift, lost unitarity).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nhqc
