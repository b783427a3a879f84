#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gridkg/rdf/PrefixMap.h"
#include "gridkg/rdf/Triple.h"

namespace gridkg::rdf {

struct TurtleDocument {
  std::vector<Triple> triples;
  PrefixMap prefixes;
};

// Parses a Turtle document: @prefix/@base (and SPARQL-style PREFIX/BASE),
// IRIs, prefixed names, blank node labels, [] and [ p o ] anonymous nodes,
// ';' and ',' lists, quoted/numeric/boolean literals with language tags or
// datatypes, and the 'a' keyword. Collections are rejected.
//
// Blank node labels are renamed apart per call: "_:x" becomes "d<N>_x" where
// N is unique to this parse, so two documents never share blank nodes.
//
// Throws ParseError (with line/column/token) and UnknownPrefixError.
TurtleDocument parseTurtle(std::string_view text, std::string_view base = {});

// Parses a single term such as `artemis:Plant`, `<http://x>` or "1"^^xsd:int
// using the given prefixes.
Term parseTurtleTerm(std::string_view text, const PrefixMap& prefixes);

// Prefix directives first (sorted by label), then triples grouped by subject
// and sorted by their rendered (s, p, o) text. Output is byte-stable for a
// given triple set and prefix map. IRIs are written as prefixed names when
// the local part allows it and as <...> otherwise.
std::string serializeTurtle(const std::vector<Triple>& triples,
                            const PrefixMap& prefixes);

// Renders one term the way serializeTurtle does.
std::string renderTerm(const Term& term, const PrefixMap& prefixes);

}  // namespace gridkg::rdf
