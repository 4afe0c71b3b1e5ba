#include "dds/error.hpp"

namespace dds {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain_violation:
      return "DomainViolation";
    case ErrorCode::factorization_failure:
      return "FactorizationFailure";
    case ErrorCode::rank_deficient:
      return "RankDeficient";
    case ErrorCode::atom_coverage:
      return "AtomCoverage";
    case ErrorCode::bad_atom:
      return "BadAtom";
    case ErrorCode::bad_constants:
      return "BadConstants";
    case ErrorCode::dimension_mismatch:
      return "DimensionMismatch";
    case ErrorCode::corrector_stall:
      return "CorrectorStall";
    case ErrorCode::predictor_stall:
      return "PredictorStall";
    case ErrorCode::newton_divergence:
      return "NewtonDivergence";
    case ErrorCode::parse_error:
      return "ParseError";
  }
  return "Unknown";
}

}  // namespace dds
