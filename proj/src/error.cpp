#include "psm/error.hpp"

namespace psm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::singular_coefficient: return "singular coefficient";
  case ErrorCode::zero_integrating_factor: return "zero integrating factor";
  case ErrorCode::near_singular: return "near-singular matrix";
  case ErrorCode::non_finite: return "non-finite value";
  case ErrorCode::bracket: return "bracket";
  case ErrorCode::convergence: return "convergence";
  case ErrorCode::singular_point: return "singular point";
  case ErrorCode::singular_path: return "singular path";
  case ErrorCode::invalid_spec: return "invalid polynomial spec";
  case ErrorCode::invalid_parameter: return "invalid parameter";
  case ErrorCode::unbound_parameter: return "unbound parameter";
  case ErrorCode::invalid_grid: return "invalid grid";
  case ErrorCode::grid: return "grid";
  case ErrorCode::degenerate_state: return "degenerate state";
  case ErrorCode::no_bound_states: return "no bound states";
  }
  return "unknown";
}

} // namespace psm
