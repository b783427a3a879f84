#pragma once

#include <set>
#include <vector>

#include "gridkg/rdf/TripleStore.h"

namespace gridkg::ontology {

// Base triples plus everything derivable from them under the RDFS-lite rule
// set:
//   rdfs2  (p domain c), (x p y)          -> (x type c)
//   rdfs3  (p range c), (x p y)           -> (y type c)   for non-literal y
//   rdfs5  (p subPropertyOf q), (q sp r)  -> (p sp r)
//   rdfs7  (p sp q), (x p y)              -> (x q y)      for IRI q
//   rdfs9  (c subClassOf d), (x type c)   -> (x type d)
//   rdfs11 (c sc d), (d sc e)             -> (c sc e)
//   eq     (c equivalentClass d)          -> (c sc d), (d sc c)
// Base and inferred sets are disjoint. The object is immutable once built.
class ClosureGraph {
 public:
  // Base and inferred triples together; what queries run against.
  const rdf::TripleStore& graph() const { return graph_; }

  std::size_t baseSize() const { return graph_.size() - inferred_.size(); }
  std::size_t inferredSize() const { return inferred_.size(); }
  bool isInferred(const rdf::Triple& triple) const;

  std::vector<rdf::Triple> inferred() const;
  std::vector<rdf::Triple> base() const;

 private:
  friend ClosureGraph computeClosure(const rdf::TripleStore& base);

  rdf::TripleStore graph_;
  std::set<rdf::IdTriple> inferred_;
};

// Least fixpoint by semi-naive forward chaining: each new triple is joined
// against the current graph in every premise role it can play.
ClosureGraph computeClosure(const rdf::TripleStore& base);

}  // namespace gridkg::ontology
