#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cubsurf {

enum class ErrorKind {
  kNotPrime,
  kDegreeTooLarge,
  kIdenticallyZero,
  kBudgetExceeded,
  kEqualPoints,
  kSingularPoint,
  kLineNotOnSurface,
  kPointNotOnSurface,
  kNoRationalPoints,
  kConfigurationAbsent,
  kNoTernaryPoint,
  kHypothesisFailed,
  kCharacteristicThree,
  kBadPrime,
  kFamilyMismatch,
  kNotFullyRational,
  kAllZero,
  kPrimeConditionFailed,
  kConstantsUnavailable,
  kInvalidArgument,
  kOverflow,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (and the CLI) can dispatch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cubsurf
