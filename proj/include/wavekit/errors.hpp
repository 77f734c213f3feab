#pragma once

// Typed error hierarchy. Numerical failures derive from Error; configuration
// problems use ConfigError so the CLI can map them to distinct exit codes.

#include <stdexcept>
#include <string>

namespace wavekit {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define WAVEKIT_DEFINE_ERROR(Name)                                \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(what) {}       \
  }

WAVEKIT_DEFINE_ERROR(FormError);            // (q,p) form mismatch or q+p != 1
WAVEKIT_DEFINE_ERROR(DerivativeError);      // required derivatives unavailable
WAVEKIT_DEFINE_ERROR(TruncationError);      // unsupported truncation order
WAVEKIT_DEFINE_ERROR(BoundaryError);        // grid boundary decay violated
WAVEKIT_DEFINE_ERROR(GridError);            // grid contract violated / mismatch
WAVEKIT_DEFINE_ERROR(DegeneracyError);      // eigenvalue gap below threshold
WAVEKIT_DEFINE_ERROR(StationaryPointError); // |dD/domega| below floor
WAVEKIT_DEFINE_ERROR(ZeroFloorError);       // leading symbol below zero floor
WAVEKIT_DEFINE_ERROR(PoleError);            // evaluation at omega = -i nu
WAVEKIT_DEFINE_ERROR(StepControlError);     // adaptive integrator failure
WAVEKIT_DEFINE_ERROR(CausticError);         // |det J| collapsed / Riccati blow-up
WAVEKIT_DEFINE_ERROR(ShellError);           // sample off the dispersion surface
WAVEKIT_DEFINE_ERROR(SourceError);          // driven state with gamma_A = 0
WAVEKIT_DEFINE_ERROR(CoverageError);        // truncated k-support in quadrature
WAVEKIT_DEFINE_ERROR(RootFindError);        // dispersion root not found
WAVEKIT_DEFINE_ERROR(GradingError);         // d0/d1 split required but absent
WAVEKIT_DEFINE_ERROR(IoError);              // file read/write failure
WAVEKIT_DEFINE_ERROR(ConfigError);          // scenario configuration invalid

#undef WAVEKIT_DEFINE_ERROR

}  // namespace wavekit
