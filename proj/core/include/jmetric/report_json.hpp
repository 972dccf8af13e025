#ifndef JMETRIC_REPORT_JSON_HPP_
#define JMETRIC_REPORT_JSON_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "jmetric/classify.hpp"
#include "jmetric/fiber_algebra.hpp"
#include "jmetric/identities.hpp"
#include "jmetric/manifold.hpp"

namespace jmetric {

enum class Format { Text, Json };

/// JSON objects use a fixed field order and shortest round-trip number
/// formatting, so equal reports serialize to identical bytes.
std::string to_json(const ValidationReport& r);
std::string to_json(const IdentityReport& r);
std::string to_json(const ClassificationReport& r);
std::string to_json(const TableReport& r);

/// Inverse of to_json. Throw Error(ConfigParse) on malformed input.
ValidationReport validation_from_json(std::string_view text);
IdentityReport identities_from_json(std::string_view text);
ClassificationReport classification_from_json(std::string_view text);
TableReport table_from_json(std::string_view text);

struct CatalogListing {
  std::string name;
  StructureKind kind;
  int dim = 0;
};

// Whole command outputs. JSON form: {"command": ..., <payload>}; text form is
// a fixed-width rendering. Both end with a newline.
std::string render_catalog(const std::vector<CatalogListing>& entries, Format f);
std::string render_validation(const std::vector<ValidationReport>& reports, Format f);
std::string render_identities(const std::vector<IdentityReport>& reports, Format f);
std::string render_classification(const std::vector<ClassificationReport>& reports, Format f);
/// `table` may be null when only named manifolds were verified.
std::string render_verify(const std::vector<ClassificationReport>& reports,
                          const TableReport* table, Format f);
std::string render_algebra_table(const std::vector<AlgebraTableRow>& rows, Format f);

}  // namespace jmetric

#endif  // JMETRIC_REPORT_JSON_HPP_
