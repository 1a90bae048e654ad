#pragma once

#include <stdexcept>
#include <string>

namespace skspin {

enum class ErrorCode {
  same_site_product,
  bad_site_index,
  dimension_mismatch,
  too_few_nodes,
  invalid_ordering_domain,
  zero_overlap,
  degenerate_abscissas,
  convergence_failure,
  config_parse,
  config_validation,
  io_failure,
};

const char* to_string(ErrorCode code);

/// Library-wide exception; carries a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::same_site_product: return "SameSiteProduct";
    case ErrorCode::bad_site_index: return "BadSiteIndex";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::too_few_nodes: return "TooFewNodes";
    case ErrorCode::invalid_ordering_domain: return "InvalidOrderingDomain";
    case ErrorCode::zero_overlap: return "ZeroOverlap";
    case ErrorCode::degenerate_abscissas: return "DegenerateAbscissas";
    case ErrorCode::convergence_failure: return "ConvergenceFailure";
    case ErrorCode::config_parse: return "ConfigParse";
    case ErrorCode::config_validation: return "ConfigValidation";
    case ErrorCode::io_failure: return "IoFailure";
  }
  return "UnknownError";
}

}  // namespace skspin
