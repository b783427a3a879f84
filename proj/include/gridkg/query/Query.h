#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gridkg/rdf/PrefixMap.h"
#include "gridkg/rdf/Triple.h"

namespace gridkg::query {

struct Variable {
  std::string name;
  friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<rdf::Term, Variable>;

inline bool isVariable(const PatternTerm& t) {
  return std::holds_alternative<Variable>(t);
}

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view toString(CompareOp op);
CompareOp negate(CompareOp op);
// The operator with its operands swapped: a < b  <=>  b > a.
CompareOp mirror(CompareOp op);

struct Filter {
  PatternTerm lhs;
  CompareOp op = CompareOp::Eq;
  PatternTerm rhs;
};

struct OrderKey {
  std::string variable;
  bool descending = false;
};

// A SELECT query of the supported subset: one basic graph pattern with
// comparison filters, optional ORDER BY and LIMIT.
struct SelectQuery {
  // Projected variable names, without '?'. For SELECT * the BGP variables in
  // order of first occurrence.
  std::vector<std::string> projection;
  std::vector<TriplePattern> patterns;
  std::vector<Filter> filters;
  std::vector<OrderKey> orderBy;
  std::optional<std::size_t> limit;
  rdf::PrefixMap prefixes;

  // Variables of the BGP in order of first occurrence.
  std::vector<std::string> patternVariables() const;
};

// Standard prefixes are predeclared and may be overridden by PREFIX lines.
// Throws ParseError (with position) and UnknownPrefixError; a projected,
// ordering or filter variable that the BGP does not bind is a ParseError.
SelectQuery parseQuery(std::string_view text);

// Rows of terms in projection order.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<rdf::Term>> rows;
};

// Three-valued comparison of two terms as FILTER sees them: numbers compare
// numerically (integer promoted to decimal/double), xsd:dateTime values
// chronologically, plain strings lexically. Returns nullopt when the terms
// are not comparable with `op` (a type error, which fails the filter).
std::optional<bool> compareTerms(const rdf::Term& a, CompareOp op,
                                 const rdf::Term& b);

// Total order used by ORDER BY: numbers and dateTimes by value, then other
// terms by their N-Triples text.
int orderTerms(const rdf::Term& a, const rdf::Term& b);

// Sorts rows by the ORDER BY keys (ties broken by the whole row so output is
// deterministic) and applies LIMIT. `rows` are in `columns` order and must
// contain every ordering variable.
void orderAndLimit(const SelectQuery& query,
                   const std::vector<std::string>& columns,
                   std::vector<std::vector<rdf::Term>>& rows);

}  // namespace gridkg::query
