#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridkg/mapping/Mapping.h"
#include "gridkg/query/Query.h"

namespace gridkg::query {

// A BGP predicate no mapping rule produces.
class RewriteError : public Error {
 public:
  explicit RewriteError(std::string predicate)
      : Error("no mapping rule produces predicate <" + predicate + ">"),
        predicate_(std::move(predicate)) {}
  const std::string& predicate() const { return predicate_; }

 private:
  std::string predicate_;
};

// One way a mapping rule can produce triples for a pattern: its rdf:type
// assertion or one of its predicate-object maps.
struct ScanAlternative {
  // Index into VirtualPlan::rules.
  std::size_t rule = 0;
  // Index into rule->maps; nullopt for the rule's class assertion.
  std::optional<std::size_t> mapIndex;
  // Source column equalities (column -> slug) implied by constant IRIs in
  // the pattern matched against the rule's templates.
  std::map<std::string, std::string> columnEqualities;
};

// A filter evaluated while scanning, on a variable that the scan binds to
// a source column.
struct PushedFilter {
  std::size_t filter = 0;
  std::string variable;
};

struct PatternScan {
  std::size_t pattern = 0;
  std::vector<ScanAlternative> alternatives;
  std::vector<PushedFilter> pushed;
};

struct VirtualPlan {
  SelectQuery query;
  std::vector<mapping::MappingRule> rules;
  std::vector<PatternScan> scans;

  // Human-readable plan, one line per scan / pushed filter / join.
  std::string describe() const;
};

// Rewrites the BGP into per-pattern source scans. No RDFS inference happens
// on this path. Throws RewriteError for a constant predicate that is neither
// rdf:type nor produced by any rule.
VirtualPlan rewriteVirtual(const SelectQuery& query, std::vector<mapping::MappingRule> rules);

// Scans the sources and hash-joins the per-pattern solutions. Each pattern
// sees the distinct triples its scans generate, so the result multiset equals
// evaluate() over a store materialized from the same rules and sources.
ResultTable evaluateVirtual(const VirtualPlan& plan, const connectors::SourceCatalog& sources);

}  // namespace gridkg::query
