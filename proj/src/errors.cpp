#include "errors.hpp"

namespace ropit {

const char* errc_name(errc code) {
  switch (code) {
    case errc::zero_inverse: return "ZeroInverse";
    case errc::modulus_mismatch: return "ModulusMismatch";
    case errc::characteristic_too_small: return "CharacteristicTooSmall";
    case errc::degree_zero_input: return "DegreeZeroInput";
    case errc::degree_too_low: return "DegreeTooLow";
    case errc::non_square: return "NonSquare";
    case errc::ring_mismatch: return "RingMismatch";
    case errc::arity_mismatch: return "ArityMismatch";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::invalid_params: return "InvalidParams";
    case errc::parse_error: return "ParseError";
    case errc::non_split_spectrum: return "NonSplitSpectrum";
    case errc::not_idempotent_mod_radical: return "NotIdempotentModRadical";
    case errc::zero_idempotent: return "ZeroIdempotent";
    case errc::grid_exhausted: return "GridExhausted";
    case errc::not_full_algebra: return "NotFullAlgebra";
    case errc::extraction_failed: return "ExtractionFailed";
    case errc::degenerate_selector: return "DegenerateSelector";
    case errc::word_count_mismatch: return "WordCountMismatch";
    case errc::threshold_overflow: return "ThresholdOverflow";
    case errc::no_collision_found: return "NoCollisionFound";
    case errc::base_too_small: return "BaseTooSmall";
    case errc::field_too_small: return "FieldTooSmall";
    case errc::all_roots: return "AllRoots";
    case errc::degree_budget_exceeded: return "DegreeBudgetExceeded";
    case errc::io_error: return "IoError";
    case errc::internal_error: return "InternalError";
  }
  return "UnknownError";
}

Error::Error(errc code, const std::string& msg)
    : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

void fail(errc code, const std::string& msg) { throw Error(code, msg); }

void require_internal(bool ok, const char* what) {
  if (!ok) fail(errc::internal_error, what);
}

}  // namespace ropit
