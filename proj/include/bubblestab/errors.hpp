#pragma once

#include <stdexcept>
#include <string>

namespace bubblestab {

// Solver or consistency failure (bracketing, quadrature budget, internal
// cross-checks). Distinct from std::domain_error, which is reserved for
// caller-side precondition violations.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// A profile or dilation factor falls outside the configured smallness gate.
class GateError : public std::runtime_error {
 public:
  explicit GateError(const std::string& what) : std::runtime_error(what) {}
};

// The sigma solve has a nonpositive radicand: the raw profiles remove more
// area than the cluster holds.
class PerturbationTooLargeError : public NumericError {
 public:
  explicit PerturbationTooLargeError(const std::string& what)
      : NumericError(what) {}
};

// The interface bump correction has no real root.
class InfeasibleCorrectionError : public NumericError {
 public:
  explicit InfeasibleCorrectionError(const std::string& what)
      : NumericError(what) {}
};

// Boundary polylines failed a sanity check (self-intersection, odd scanline
// parity).
class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// Isometry search left the trust region instead of converging.
class SearchError : public NumericError {
 public:
  explicit SearchError(const std::string& what) : NumericError(what) {}
};

}  // namespace bubblestab
