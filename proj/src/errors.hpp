#pragma once

#include <stdexcept>
#include <string>

namespace ropit {

// Failure taxonomy shared by the whole library.  Every throwing operation
// documents which of these it can raise; the C API maps them to status codes.
enum class errc {
  zero_inverse,
  modulus_mismatch,
  characteristic_too_small,
  degree_zero_input,
  degree_too_low,
  non_square,
  ring_mismatch,
  arity_mismatch,
  budget_exceeded,
  invalid_params,
  parse_error,
  non_split_spectrum,
  not_idempotent_mod_radical,
  zero_idempotent,
  grid_exhausted,
  not_full_algebra,
  extraction_failed,
  degenerate_selector,
  word_count_mismatch,
  threshold_overflow,
  no_collision_found,
  base_too_small,
  field_too_small,
  all_roots,
  degree_budget_exceeded,
  io_error,
  internal_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& msg);
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] void fail(errc code, const std::string& msg);

// Internal consistency checks (postconditions the math guarantees).
void require_internal(bool ok, const char* what);

}  // namespace ropit
