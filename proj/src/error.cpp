#include "meminductor/error.hpp"

namespace meminductor {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Configuration: return "configuration";
    case ErrorCode::Shape: return "shape";
    case ErrorCode::InsufficientData: return "insufficient-data";
    case ErrorCode::Range: return "range";
    case ErrorCode::Stiffness: return "stiffness";
    case ErrorCode::Divergence: return "divergence";
    case ErrorCode::StepOverflow: return "step-overflow";
  }
  return "unknown";
}

}  // namespace meminductor
