#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace psm {

enum class ErrorCode {
  singular_coefficient,
  zero_integrating_factor,
  near_singular,
  non_finite,
  bracket,
  convergence,
  singular_point,
  singular_path,
  invalid_spec,
  invalid_parameter,
  unbound_parameter,
  invalid_grid,
  grid,
  degenerate_state,
  no_bound_states,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to a diagnostic and exit status.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace psm
