#include "cubsurf/error.hpp"

namespace cubsurf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotPrime: return "NotPrime";
    case ErrorKind::kDegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::kIdenticallyZero: return "IdenticallyZero";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kEqualPoints: return "EqualPoints";
    case ErrorKind::kSingularPoint: return "SingularPoint";
    case ErrorKind::kLineNotOnSurface: return "LineNotOnSurface";
    case ErrorKind::kPointNotOnSurface: return "PointNotOnSurface";
    case ErrorKind::kNoRationalPoints: return "NoRationalPoints";
    case ErrorKind::kConfigurationAbsent: return "ConfigurationAbsent";
    case ErrorKind::kNoTernaryPoint: return "NoTernaryPoint";
    case ErrorKind::kHypothesisFailed: return "HypothesisFailed";
    case ErrorKind::kCharacteristicThree: return "CharacteristicThree";
    case ErrorKind::kBadPrime: return "BadPrime";
    case ErrorKind::kFamilyMismatch: return "FamilyMismatch";
    case ErrorKind::kNotFullyRational: return "NotFullyRational";
    case ErrorKind::kAllZero: return "AllZero";
    case ErrorKind::kPrimeConditionFailed: return "PrimeConditionFailed";
    case ErrorKind::kConstantsUnavailable: return "ConstantsUnavailable";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kOverflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace cubsurf
