#pragma once

#include <stdexcept>
#include <string>

namespace lambdalab {

// Base of every error raised by the library. The CLI maps these to exit
// code 2 (input error) except InternalInconsistency, which is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LAMBDALAB_ERROR(Name)                 \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

// truncpoly
LAMBDALAB_ERROR(ShapeMismatch);
LAMBDALAB_ERROR(ArityMismatch);
LAMBDALAB_ERROR(NonzeroConstantTerm);
LAMBDALAB_ERROR(NotAUnit);
LAMBDALAB_ERROR(ExponentOutOfRange);
LAMBDALAB_ERROR(InvalidShape);
LAMBDALAB_ERROR(ParseError);
LAMBDALAB_ERROR(InvalidArgument);

// symuniv
LAMBDALAB_ERROR(IndexOutOfRange);
LAMBDALAB_ERROR(NotSymmetric);
LAMBDALAB_ERROR(CapExceeded);
LAMBDALAB_ERROR(NonIntegralLambda);
LAMBDALAB_ERROR(TableTooShort);

// adams
LAMBDALAB_ERROR(PrimeOutOfSet);
LAMBDALAB_ERROR(NonIntegralRule);
LAMBDALAB_ERROR(UncoveredPrimeFactor);
LAMBDALAB_ERROR(ConstraintViolation);
LAMBDALAB_ERROR(InternalInconsistency);

// isoclass
LAMBDALAB_ERROR(ConditionAViolated);
LAMBDALAB_ERROR(WrongRegime);
LAMBDALAB_ERROR(ZeroLinearCoefficient);
LAMBDALAB_ERROR(PrefixMismatch);

#undef LAMBDALAB_ERROR

}  // namespace lambdalab
