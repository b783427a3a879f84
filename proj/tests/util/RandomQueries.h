#pragma once

#include <random>
#include <string>
#include <vector>

#include "gridkg/rdf/TripleStore.h"
#include "gridkg/rdf/Turtle.h"
#include "gridkg/rdf/Vocab.h"

namespace gridkg::testutil {

inline bool isComparable(const rdf::Term& t) {
  return t.isLiteral() && (t.datatype() == vocab::kXsdDecimal ||
                           t.datatype() == vocab::kXsdInteger ||
                           t.datatype() == vocab::kXsdDateTime);
}

// Random connected BGP grown from triples of the data graph, so every query
// has at least one answer before its filter.
inline std::string randomQuery(std::mt19937_64& rng, const rdf::TripleStore& data) {
  const std::vector<rdf::Triple> all = data.triples();
  const auto& prefixes = rdf::standardPrefixes();
  auto coin = [&](double p) { return std::uniform_real_distribution<>(0, 1)(rng) < p; };
  auto pick = [&](const auto& v) -> const auto& {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };

  std::string body;
  std::string filter;
  std::size_t fresh = 0;
  const auto& seed = pick(all);
  std::string subject = coin(0.25) ? rdf::renderTerm(seed.subject, prefixes) : "?s";
  std::vector<std::pair<std::string, rdf::Term>> iriObjects;

  auto addPattern = [&](const std::string& s, const rdf::Triple& t, bool allowVarPredicate) {
    std::string predicate = allowVarPredicate && coin(0.2) ? "?p" + std::to_string(fresh)
                                                           : rdf::renderTerm(t.predicate, prefixes);
    std::string object;
    if (coin(0.2)) {
      object = rdf::renderTerm(t.object, prefixes);
    } else {
      object = "?o" + std::to_string(fresh);
      if (t.object.isIri()) iriObjects.emplace_back(object, t.object);
      if (filter.empty() && isComparable(t.object) && coin(0.5)) {
        static const char* ops[] = {"<", "<=", ">", ">=", "=", "!="};
        filter = "FILTER(" + object + " " + pick(std::vector<std::string>(ops, ops + 6)) + " " +
                 rdf::renderTerm(t.object, prefixes) + ")";
      }
    }
    ++fresh;
    body += s + " " + predicate + " " + object + " .\n";
  };

  addPattern(subject, seed, true);
  auto siblings = data.match(seed.subject, std::nullopt, std::nullopt);
  std::size_t extra = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
  for (std::size_t i = 0; i < extra; ++i) addPattern(subject, pick(siblings), false);
  if (!iriObjects.empty() && coin(0.7)) {
    const auto& [var, iri] = pick(iriObjects);
    auto next = data.match(iri, std::nullopt, std::nullopt);
    if (!next.empty()) addPattern(var, pick(next), false);
  }
  return "SELECT * WHERE {\n" + body + filter + "\n}";
}

}  // namespace gridkg::testutil
