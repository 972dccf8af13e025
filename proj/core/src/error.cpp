#include "jmetric/error.hpp"

namespace jmetric {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SlotMismatch: return "SlotMismatch";
    case ErrorCode::DegenerateSystem: return "DegenerateSystem";
    case ErrorCode::NearSingularMetric: return "NearSingularMetric";
    case ErrorCode::DomainEmpty: return "DomainEmpty";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::UnknownCatalogName: return "UnknownCatalogName";
    case ErrorCode::DegenerateConstruction: return "DegenerateConstruction";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::TorsionFormulaMismatch: return "TorsionFormulaMismatch";
    case ErrorCode::NijenhuisFormulaMismatch: return "NijenhuisFormulaMismatch";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::ExactRankMismatch: return "ExactRankMismatch";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
    case ErrorCode::KindMismatch: return "KindMismatch";
  }
  return "Unknown";
}

bool is_internal_consistency_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::SlotMismatch:
    case ErrorCode::DegenerateSystem:
    case ErrorCode::TorsionFormulaMismatch:
    case ErrorCode::NijenhuisFormulaMismatch:
    case ErrorCode::ExactRankMismatch:
    case ErrorCode::TheoremViolation:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace jmetric
