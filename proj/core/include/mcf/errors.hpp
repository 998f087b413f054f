#pragma once

#include <stdexcept>
#include <string>

namespace mcf {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define MCF_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
  }

MCF_DEFINE_ERROR(NonFiniteError);
MCF_DEFINE_ERROR(DegenerateRadiusError);
MCF_DEFINE_ERROR(NotClosedError);
MCF_DEFINE_ERROR(NonPositiveHError);
MCF_DEFINE_ERROR(CFLViolationError);
MCF_DEFINE_ERROR(RadiusCollapseError);
MCF_DEFINE_ERROR(HeightTooSmallError);
MCF_DEFINE_ERROR(EmptyWindowError);
MCF_DEFINE_ERROR(SeedNotCoveredError);
MCF_DEFINE_ERROR(StepTooLargeError);
MCF_DEFINE_ERROR(NonConvexError);
MCF_DEFINE_ERROR(NotPinchedError);
MCF_DEFINE_ERROR(EmptyRegionError);
MCF_DEFINE_ERROR(BallNotContainedError);
MCF_DEFINE_ERROR(InitialPinchFailsError);
MCF_DEFINE_ERROR(BetaNonPositiveError);
MCF_DEFINE_ERROR(ConfigError);

#undef MCF_DEFINE_ERROR

}  // namespace mcf
