#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ssf {

enum class ErrorKind {
  NotHermitian,
  IndefiniteInput,
  InvalidExponent,
  EigenFailure,
  NearSingular,
  OnePointSpectrum,
  NotContraction,
  NotUnitary,
  NotDissipative,
  DimensionMismatch,
  NonFinite,
  InvalidOrder,
  InvalidParameter,
  UnwrapAmbiguity,
  NonzeroWinding,
  KernelViolation,
  QuadratureDivergence,
  BranchCut,
  NegativePotential,
  DissipativityViolation,
  SchemaError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ssf
