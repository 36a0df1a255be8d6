#pragma once

#include <stdexcept>
#include <string>

namespace smalleig {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParameterOutOfRange : Error {
  using Error::Error;
};
struct NonPositiveParameter : ParameterOutOfRange {
  using ParameterOutOfRange::ParameterOutOfRange;
};
struct NonPositiveInput : Error {
  using Error::Error;
};
struct NotHessenberg : Error {
  using Error::Error;
};
struct ZeroReflectorVector : Error {
  using Error::Error;
};
struct ZeroMatrix : Error {
  using Error::Error;
};
struct SingularEncounter : Error {
  using Error::Error;
};
struct RequiresViolation : Error {
  using Error::Error;
};
struct DecoupleBudgetExceeded : Error {
  using Error::Error;
};
struct RetryBudgetExceeded : Error {
  using Error::Error;
};
struct OracleNonConvergence : Error {
  using Error::Error;
};
struct CardinalityMismatch : Error {
  using Error::Error;
};
struct DefectiveOrClustered : Error {
  using Error::Error;
};
struct TooFewEigenvalues : Error {
  using Error::Error;
};
struct GridTooCoarse : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

// Raised when a requested tolerance or a theory-mode precision precondition
// cannot be met at the configured mantissa width. `required_bits` is the
// mantissa width that would satisfy the violated bound (0 when not known).
struct PrecisionInsufficient : Error {
  long required_bits;
  explicit PrecisionInsufficient(const std::string& what, long bits = 0)
      : Error(what), required_bits(bits) {}
};

}  // namespace smalleig
