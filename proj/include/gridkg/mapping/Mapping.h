#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gridkg/connectors/Source.h"
#include "gridkg/rdf/TripleStore.h"

namespace gridkg::mapping {

class MappingError : public Error {
 public:
  using Error::Error;
};

// An IRI with {column} placeholders, e.g. "artemis-data:plant/{plant_id}".
// A leading prefix is expanded with the standard prefixes when parsed.
class IriTemplate {
 public:
  IriTemplate() = default;
  // Throws MappingError on unbalanced braces, empty placeholders or an
  // unknown prefix.
  static IriTemplate parse(std::string_view text);

  // Placeholders replaced by slugValue of the row cells; nullopt if one of
  // them is null or absent.
  std::optional<std::string> expand(const connectors::Row& row) const;

  const std::string& text() const { return text_; }
  // Literal text around the placeholders: parts().size() == columns().size() + 1.
  const std::vector<std::string>& parts() const { return parts_; }
  const std::vector<std::string>& columns() const { return columns_; }

 private:
  std::string text_;
  std::vector<std::string> parts_;
  std::vector<std::string> columns_;
};

struct ObjectSpec {
  enum class Kind { Column, Constant, Template };
  Kind kind = Kind::Column;
  std::string column;
  // Datatype IRI for column objects; empty means "from the column type".
  std::string datatype;
  rdf::Term constant;
  IriTemplate iriTemplate;
};

struct PredicateObjectMap {
  std::string predicate;
  ObjectSpec object;
};

struct MappingRule {
  std::string id;
  std::string source;
  IriTemplate subject;
  std::optional<std::string> classIri;
  std::vector<PredicateObjectMap> maps;
};

// {"rules": [{"rule_id", "source", "subject_template", "class",
//   "predicate_object_maps": [{"predicate", "column" | "constant" |
//   "iri_template", "datatype"?}]}]}. Template and object columns must
// exist in the source schema. Throws MappingError.
std::vector<MappingRule> parseMappings(std::string_view json,
                                       const connectors::SourceCatalog& sources);
std::vector<MappingRule> loadMappings(const std::filesystem::path& path,
                                      const connectors::SourceCatalog& sources);

// The literal a column object produces for a non-null cell.
rdf::Term objectLiteral(const connectors::Value& value, connectors::ColumnType type,
                        const std::string& datatype);

struct RuleOutput {
  std::vector<rdf::Triple> triples;
  // Subject template hit a null: nothing generated.
  bool skipped = false;
  // Object maps dropped because their value was null.
  std::size_t droppedAssertions = 0;
};

// The single triple of the class assertion (mapIndex nullopt) or of one
// predicate-object map; nullopt when the subject or object value is null.
std::optional<rdf::Triple> applyMap(const MappingRule& rule, std::optional<std::size_t> mapIndex,
                                    const connectors::SourceDescriptor& source,
                                    const connectors::Row& row);

RuleOutput applyRule(const MappingRule& rule, const connectors::SourceDescriptor& source,
                     const connectors::Row& row);

struct MaterializationReport {
  std::size_t rowsRead = 0;
  std::size_t rowsSkipped = 0;
  std::size_t triplesGenerated = 0;
  std::size_t duplicatesSuppressed = 0;
  std::size_t droppedAssertions = 0;
  std::vector<std::string> warnings;

  // Triples the run added to the store.
  std::size_t storeGrowth() const { return triplesGenerated - duplicatesSuppressed; }
  MaterializationReport& operator+=(const MaterializationReport& other);
};

// Rows of every source some rule reads, loaded once each (filters applied,
// unique ids checked against each subject template).
using SourceRows = std::map<std::string, connectors::SourceData>;
SourceRows loadRuleSources(const std::vector<MappingRule>& rules,
                           const connectors::SourceCatalog& sources);

// Applies every rule to every row of its source and inserts the results.
// With `ontology`, each predicate or class IRI it does not declare yields one
// warning.
MaterializationReport materialize(const std::vector<MappingRule>& rules,
                                  const connectors::SourceCatalog& sources,
                                  rdf::TripleStore& store,
                                  const rdf::TripleStore* ontology = nullptr);

}  // namespace gridkg::mapping
