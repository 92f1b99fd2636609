#pragma once

#include <stdexcept>
#include <string>

namespace svarkit {

// Common base so callers can catch everything the toolkit throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SVARKIT_DEFINE_ERROR(name)          \
  class name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  };

SVARKIT_DEFINE_ERROR(ParseError)           // malformed input (CSV cells, matrices)
SVARKIT_DEFINE_ERROR(IndexError)           // time index not strictly increasing
SVARKIT_DEFINE_ERROR(LengthError)          // sample too short for the operation
SVARKIT_DEFINE_ERROR(DegenerateError)      // zero-variance / constant input
SVARKIT_DEFINE_ERROR(ConfigError)          // unsupported option or malformed config
SVARKIT_DEFINE_ERROR(SingularError)        // singular or ill-conditioned matrix
SVARKIT_DEFINE_ERROR(DomainError)          // argument outside mathematical domain
SVARKIT_DEFINE_ERROR(IdentificationError)  // SVAR pattern not identified
SVARKIT_DEFINE_ERROR(ConvergenceError)     // optimizer failed across all starts
SVARKIT_DEFINE_ERROR(BootstrapError)       // too many failed replications
SVARKIT_DEFINE_ERROR(StabilityError)       // VAR roots on or outside the unit circle
SVARKIT_DEFINE_ERROR(OutlierError)         // outlier screen refused to linearize

#undef SVARKIT_DEFINE_ERROR

}  // namespace svarkit
