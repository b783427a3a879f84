#pragma once

#include "gridkg/query/Query.h"
#include "gridkg/rdf/TripleStore.h"

namespace gridkg::query {

// Position of each pattern in the chosen join order. Patterns are picked
// greedily: most bound positions first (constants plus variables bound by
// earlier patterns), then the smallest index cardinality of the constant
// part, then the original position.
std::vector<std::size_t> joinOrder(const SelectQuery& query,
                                   const rdf::TripleStore& store);

// Index nested-loop evaluation with bag semantics. Filters run as soon as
// their variables are bound.
ResultTable evaluate(const SelectQuery& query, const rdf::TripleStore& store);

// Same, with an explicit pattern order (a permutation of pattern indexes).
ResultTable evaluate(const SelectQuery& query, const rdf::TripleStore& store,
                     const std::vector<std::size_t>& order);

// Header line of variable names, then one tab-separated line per row with
// terms rendered as in Turtle.
std::string toTsv(const ResultTable& table, const rdf::PrefixMap& prefixes);

}  // namespace gridkg::query
