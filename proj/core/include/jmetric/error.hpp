#ifndef JMETRIC_ERROR_HPP_
#define JMETRIC_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace jmetric {

enum class ErrorCode {
  // numeric core
  SlotMismatch,
  DegenerateSystem,
  NearSingularMetric,
  // manifold
  DomainEmpty,
  PointOutsideDomain,
  UnknownCatalogName,
  DegenerateConstruction,
  ConfigParse,
  // connection (implementation-consistency failures)
  TorsionFormulaMismatch,
  NijenhuisFormulaMismatch,
  // pointwise algebra
  UnsupportedDimension,
  ExactRankMismatch,
  // classify
  TheoremViolation,
  KindMismatch,
};

std::string_view to_string(ErrorCode code);

/// True for codes that can only be raised by an internal bug, never by bad
/// input.
bool is_internal_consistency_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jmetric

#endif  // JMETRIC_ERROR_HPP_
