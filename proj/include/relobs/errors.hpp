#pragma once

#include <stdexcept>
#include <string>

namespace relobs {

/// Base of every library error. The CLI maps the three branches below to
/// exit codes 2 / 3 / 4; see README "exit codes".
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual input (expression grammar, rational literals, JSON shape).
struct ParseError : Error {
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  explicit ParseError(const std::string& what) : Error(what), line(0), column(0) {}
  int line;
  int column;
};

/// A value or request violates a documented type invariant or operation
/// precondition: the computation is not attempted.
struct ValidationError : Error {
  using Error::Error;
};

/// Normal-ordering would require a momentum to cross a potential atom whose
/// argument involves that particle; the result is not a polynomial.
struct NonPolynomialCommutator : ValidationError {
  using ValidationError::ValidationError;
};

/// A substitution image mixes position and momentum indices.
struct MixedKindSubstitution : ValidationError {
  using ValidationError::ValidationError;
};

/// Operation requires a spatial dimension the system does not have.
struct DimensionError : ValidationError {
  using ValidationError::ValidationError;
};

/// Frame-map matrix fails an invariant (singular, wrong CM row, ...).
struct FrameMapError : ValidationError {
  using ValidationError::ValidationError;
};

/// Center-of-mass projection applied to an operator that still depends on
/// the CM position.
struct CMPositionDependence : ValidationError {
  using ValidationError::ValidationError;
};

/// Numeric model fails a structural invariant (asymmetric K, bad grid, ...).
struct ModelError : ValidationError {
  using ValidationError::ValidationError;
};

/// Mode matrix has an eigenvalue below the -1e-12 clip.
struct UnstableModel : ValidationError {
  using ValidationError::ValidationError;
};

/// Scaling fit asked for with fewer than three lengths or a non-geometric list.
struct FitDegeneracy : ValidationError {
  using ValidationError::ValidationError;
};

/// A numeric routine ran but failed to converge or to satisfy a residual bound.
struct NumericalError : Error {
  using Error::Error;
};

/// The substitution route and the angular-momentum commutator route disagree
/// about rotation invariance; guards against an internal algebra bug.
struct InconsistentRotationCheck : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace relobs
