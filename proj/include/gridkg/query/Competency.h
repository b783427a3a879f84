#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridkg/query/Query.h"
#include "gridkg/rdf/TripleStore.h"

namespace gridkg::query {

enum class ParameterType { String, Iri, DateTime, Integer, Decimal };

struct CqParameter {
  std::string name;
  ParameterType type = ParameterType::String;
  std::optional<std::string> defaultValue;
};

// One competency question: a SELECT template with {{name}} placeholders.
// `closureFreeTemplate` is an equivalent formulation that needs no RDFS
// inference (used where inference is unavailable).
struct CompetencyQuestion {
  std::string id;
  std::string title;
  std::vector<CqParameter> parameters;
  std::string queryTemplate;
  std::optional<std::string> closureFreeTemplate;
  // Row count the fixture data must produce with the default parameters.
  std::optional<std::size_t> expectedRows;
};

using CqParams = std::map<std::string, std::string>;

class UnknownCompetencyQuestionError : public Error {
 public:
  explicit UnknownCompetencyQuestionError(const std::string& id)
      : Error("unknown competency question " + id) {}
};

class CompetencyCatalog {
 public:
  CompetencyCatalog() = default;
  explicit CompetencyCatalog(std::vector<CompetencyQuestion> questions)
      : questions_(std::move(questions)) {}

  const std::vector<CompetencyQuestion>& questions() const { return questions_; }
  // Throws UnknownCompetencyQuestionError.
  const CompetencyQuestion& at(std::string_view id) const;
  const CompetencyQuestion* find(std::string_view id) const;

 private:
  std::vector<CompetencyQuestion> questions_;
};

// Catalog text format (see docs/formats.md):
//   [CQ1]
//   title = ...
//   param = provider:string=ElektroCo
//   expect_rows = 2
//   query =
//     SELECT ...        (indented continuation lines)
CompetencyCatalog parseCatalog(std::string_view text);
CompetencyCatalog loadCatalog(const std::filesystem::path& path);

// Substitutes parameters (explicit values, else defaults) into the template
// and renders each as a term of its declared type. Throws Error for a missing
// parameter or a value that does not fit its type.
std::string instantiate(const CompetencyQuestion& question, const CqParams& params,
                        bool closureFree = false);

struct CompetencyResult {
  std::string id;
  std::string title;
  std::size_t rowCount = 0;
  std::optional<std::size_t> expectedRows;
  bool passed = false;
  std::string message;
  ResultTable rows;
};

// Evaluates the selected questions (all when `ids` is empty) over `graph`.
// A question passes when it has solutions, or exactly the expected row count
// when the catalog declares one and only defaults are used.
std::vector<CompetencyResult> checkCompetency(const rdf::TripleStore& graph,
                                              const CompetencyCatalog& catalog,
                                              const std::vector<std::string>& ids,
                                              const CqParams& params,
                                              bool closureFree = false);

}  // namespace gridkg::query
