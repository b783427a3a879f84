#pragma once

#include <compare>
#include <ostream>

#include "gridkg/rdf/Term.h"

namespace gridkg::rdf {

// Subject is never a literal and the predicate is always an IRI. Use
// Triple::make to get the invariant checked.
struct Triple {
  Term subject;
  Term predicate;
  Term object;

  static Triple make(Term s, Term p, Term o);

  std::string toNTriples() const;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

std::ostream& operator<<(std::ostream& os, const Term& term);
std::ostream& operator<<(std::ostream& os, const Triple& triple);

}  // namespace gridkg::rdf

template <>
struct std::hash<gridkg::rdf::Triple> {
  std::size_t operator()(const gridkg::rdf::Triple& t) const noexcept {
    std::hash<gridkg::rdf::Term> h;
    std::size_t seed = h(t.subject);
    seed ^= h(t.predicate) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    seed ^= h(t.object) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};
