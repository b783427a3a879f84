#pragma once

#include <random>
#include <regex>
#include <string>
#include <vector>

#include "gridkg/rdf/Triple.h"
#include "gridkg/rdf/Vocab.h"

namespace gridkg::testutil {

// Random graphs over a small vocabulary so that terms repeat and the prefix
// compaction, escaping and grouping paths of the serializer all get hit.
inline std::vector<rdf::Triple> randomGraph(std::mt19937_64& rng,
                                            std::size_t maxTriples) {
  using rdf::Term;
  std::uniform_int_distribution<std::size_t> sizeDist(0, maxTriples);
  std::uniform_int_distribution<int> pick(0, 1 << 20);
  auto node = [&]() -> Term {
    int n = pick(rng) % 12;
    switch (pick(rng) % 4) {
      case 0:
        return Term::iri(std::string(vocab::kArtemis) + "Node" + std::to_string(n));
      case 1:
        return Term::iri("http://example.org/path/" + std::to_string(n) + "/x.y");
      case 2:
        return Term::blank("b" + std::to_string(n));
      default:
        return Term::iri(std::string(vocab::kArtemisData) + "plant/" +
                         std::to_string(n) + "_p");
    }
  };
  auto predicate = [&]() -> Term {
    static const char* kLocal[] = {"p0", "p1", "hasValue", "related-to"};
    int n = pick(rng) % 5;
    if (n == 4) return Term::iri(std::string(vocab::kRdfType));
    return Term::iri(std::string(vocab::kSeas) + kLocal[n]);
  };
  auto object = [&]() -> Term {
    int n = pick(rng) % 10;
    switch (pick(rng) % 6) {
      case 0:
        return node();
      case 1:
        return Term::literal("plain " + std::to_string(n));
      case 2:
        return Term::langLiteral("label \"" + std::to_string(n) + "\"\n", "en");
      case 3:
        return Term::literal(std::to_string(n) + ".5", std::string(vocab::kXsdDecimal));
      case 4:
        return Term::literal("2021-05-20T1" + std::to_string(n) + ":00:00Z",
                             std::string(vocab::kXsdDateTime));
      default:
        return Term::literal("tab\there \\ \xC5\xBEuto",
                             "http://example.org/dt#custom");
    }
  };
  std::vector<rdf::Triple> out;
  std::size_t size = sizeDist(rng);
  for (std::size_t i = 0; i < size; ++i) {
    out.push_back(rdf::Triple::make(node(), predicate(), object()));
  }
  return out;
}

// Undoes the per-document blank node renaming ("d<N>_label" -> "label") so
// graphs can be compared up to that consistent renaming.
inline rdf::Term stripBlankScope(const rdf::Term& t) {
  if (!t.isBlank()) return t;
  static const std::regex kScope("^d[0-9]+_");
  return rdf::Term::blank(std::regex_replace(t.value(), kScope, ""));
}

inline rdf::Triple stripBlankScope(const rdf::Triple& t) {
  return rdf::Triple{stripBlankScope(t.subject), t.predicate,
                     stripBlankScope(t.object)};
}

}  // namespace gridkg::testutil
