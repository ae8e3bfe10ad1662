#pragma once

#include <stdexcept>
#include <string>

namespace tycat {

#define TYCAT_ERROR(Name)                                        \
  struct Name : std::runtime_error {                             \
    explicit Name(const std::string& m) : std::runtime_error(std::string(#Name) + ": " + m) {} \
  }

TYCAT_ERROR(CapExceeded);
TYCAT_ERROR(ContextMismatch);
TYCAT_ERROR(NotInKernel);
TYCAT_ERROR(NotIsotropic);
TYCAT_ERROR(DegenerateRestriction);
TYCAT_ERROR(OrderCapExceeded);
TYCAT_ERROR(NotInvertible);
TYCAT_ERROR(ClosureCapExceeded);
TYCAT_ERROR(ActionInvalid);
TYCAT_ERROR(StabilizationFailure);
TYCAT_ERROR(NotACocycle);
TYCAT_ERROR(PairingNotInvariant);
TYCAT_ERROR(HypothesisViolated);
TYCAT_ERROR(NotSymplectic);
TYCAT_ERROR(ParseError);

#undef TYCAT_ERROR

}  // namespace tycat
