#pragma once

#include <stdexcept>
#include <string>

namespace cutfem {

/// Invalid input or configuration (bad parameters, inconsistent sizes).
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Degenerate geometric input, e.g. asking to cut an element that is not cut.
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Linear or nonlinear solver breakdown.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace cutfem
