#pragma once

#include <stdexcept>
#include <string>

namespace qca {

/// Invalid geometry, parameters, or input documents. Maps to CLI exit code 1.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Eigensolver failure (non-convergence, residual out of bounds). CLI exit code 2.
class solver_error : public std::runtime_error {
 public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qca
