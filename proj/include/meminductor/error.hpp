#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace meminductor {

enum class ErrorCode {
  Domain,            // argument outside the mathematical domain of a law
  Configuration,     // inconsistent options (e.g. multi-cycle loop on a non-periodic drive)
  Shape,             // curve does not have the required shape (open loop, too few samples)
  InsufficientData,  // not enough crossings/extrema to measure
  Range,             // requested time outside a trace
  Stiffness,         // coil-core loop denominator below the configured floor
  Divergence,        // non-finite state during integration
  StepOverflow,      // too many integration steps requested
};

std::string_view to_string(ErrorCode code);

/// Numerical and configuration failures raised by the simulation modules.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace meminductor
