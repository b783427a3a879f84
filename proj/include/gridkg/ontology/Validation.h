#pragma once

#include <string>
#include <vector>

#include "gridkg/ontology/Ontology.h"
#include "gridkg/query/Competency.h"

namespace gridkg::ontology {

enum class FindingKind {
  // Asserted rdfs:subClassOf edges form a cycle among distinct terms.
  SubClassCycle,
  // A superterm, domain or range target that nothing declares.
  DanglingReference,
  // A property whose range is a datatype used with an IRI or blank object.
  LiteralRangeMisuse,
};

std::string_view toString(FindingKind kind);

struct CoherenceFinding {
  FindingKind kind;
  // Terms involved, sorted (cycle members; term + target; property + subject).
  std::vector<std::string> terms;
  std::string message;
};

struct ModuleModularity {
  std::string module;
  std::size_t internalRefs = 0;
  std::size_t externalRefs = 0;
  // internal / (internal + external); 1.0 without references.
  double score = 1.0;
};

struct ValidationReport {
  // Share of module terms carrying both rdfs:label and rdfs:comment.
  double clarity = 1.0;
  std::size_t termCount = 0;
  std::size_t clearTermCount = 0;
  std::vector<CoherenceFinding> coherence;
  std::vector<ModuleModularity> modularity;
  std::vector<query::CompetencyResult> competency;

  bool hasFailures() const;
};

// Clarity, coherence and modularity of the modules over the store (the
// asserted triples; instance data in the store is checked for range misuse).
// Datatype references (xsd:*, rdfs:Literal) count neither as internal nor as
// external references.
ValidationReport validate(const rdf::TripleStore& store,
                          const std::vector<OntologyModule>& modules);

}  // namespace gridkg::ontology
