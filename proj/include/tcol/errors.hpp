#pragma once

#include <stdexcept>
#include <string>

namespace tcol {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct GraphInvariantError : std::runtime_error {
  explicit GraphInvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CapExceededError : std::runtime_error {
  explicit CapExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroProbabilityError : std::runtime_error {
  explicit ZeroProbabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ToleranceError : std::runtime_error {
  explicit ToleranceError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EigenError : std::runtime_error {
  explicit EigenError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PreconditionError : std::invalid_argument {
  explicit PreconditionError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a rounded output contradicts the backend's own constraints,
// e.g. a monochromatic edge whose endpoints both carry marginal mass > 1/2.
struct BackendInconsistencyError : std::runtime_error {
  explicit BackendInconsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tcol
