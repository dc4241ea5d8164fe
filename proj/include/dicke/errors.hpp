#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

// Argument outside the documented domain of an operation (bad spin label,
// rate out of range, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Structurally invalid data: non-Hermitian density matrix, unnormalized
// weights, dimension mismatch between operands.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Problem size exceeds the hard cap of the selected backend.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation is well defined but not available in the requested parameter
// regime (e.g. the per-sector picture once local noise is switched on).
struct UnsupportedBackendError : std::logic_error {
  using std::logic_error::logic_error;
};

// Iterative solver stalled before reaching the requested tolerance.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), last_residual(residual) {}
  double last_residual;
};

// Adaptive integrator step size collapsed below the representable range.
struct StiffnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dicke
