#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dds {

enum class ErrorCode {
  domain_violation,
  factorization_failure,
  rank_deficient,
  atom_coverage,
  bad_atom,
  bad_constants,
  dimension_mismatch,
  corrector_stall,
  predictor_stall,
  newton_divergence,
  parse_error,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type thrown by every fallible routine in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_{code} {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dds
