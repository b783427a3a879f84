#include "gridkg/ontology/Closure.h"

#include <deque>

#include "gridkg/rdf/Vocab.h"

namespace gridkg::ontology {

using rdf::IdTriple;
using rdf::Term;
using rdf::TermId;
using rdf::Triple;

namespace {

class Reasoner {
 public:
  Reasoner(rdf::TripleStore& graph, std::set<IdTriple>& inferred)
      : graph_(graph), inferred_(inferred) {
    type_ = graph_.encode(Term::iri(std::string(vocab::kRdfType)));
    domain_ = graph_.encode(Term::iri(std::string(vocab::kRdfsDomain)));
    range_ = graph_.encode(Term::iri(std::string(vocab::kRdfsRange)));
    subClass_ = graph_.encode(Term::iri(std::string(vocab::kRdfsSubClassOf)));
    subProperty_ =
        graph_.encode(Term::iri(std::string(vocab::kRdfsSubPropertyOf)));
    equivalent_ =
        graph_.encode(Term::iri(std::string(vocab::kOwlEquivalentClass)));
  }

  void run() {
    for (const auto& t : graph_.matchIds(std::nullopt, std::nullopt, std::nullopt)) {
      pending_.push_back(t);
    }
    while (!pending_.empty()) {
      IdTriple t = pending_.front();
      pending_.pop_front();
      fire(t);
    }
  }

 private:
  bool isLiteral(TermId id) const { return graph_.decode(id).isLiteral(); }
  bool isIri(TermId id) const { return graph_.decode(id).isIri(); }

  void derive(TermId s, TermId p, TermId o) {
    if (isLiteral(s)) return;
    IdTriple t{s, p, o};
    if (graph_.insert(t)) {
      inferred_.insert(t);
      pending_.push_back(t);
    }
  }

  // Every rule instance in which `t` is one of the premises.
  void fire(const IdTriple& t) {
    // t as an instance triple (x p y).
    for (const auto& d : graph_.matchIds(t.p, domain_, std::nullopt)) {
      derive(t.s, type_, d.o);
    }
    if (!isLiteral(t.o)) {
      for (const auto& r : graph_.matchIds(t.p, range_, std::nullopt)) {
        derive(t.o, type_, r.o);
      }
    }
    for (const auto& sp : graph_.matchIds(t.p, subProperty_, std::nullopt)) {
      if (isIri(sp.o)) derive(t.s, sp.o, t.o);
    }

    if (t.p == domain_) {
      for (const auto& u : graph_.matchIds(std::nullopt, t.s, std::nullopt)) {
        derive(u.s, type_, t.o);
      }
    } else if (t.p == range_) {
      for (const auto& u : graph_.matchIds(std::nullopt, t.s, std::nullopt)) {
        if (!isLiteral(u.o)) derive(u.o, type_, t.o);
      }
    } else if (t.p == subProperty_) {
      for (const auto& u : graph_.matchIds(t.o, subProperty_, std::nullopt)) {
        derive(t.s, subProperty_, u.o);
      }
      for (const auto& u : graph_.matchIds(std::nullopt, subProperty_, t.s)) {
        derive(u.s, subProperty_, t.o);
      }
      if (isIri(t.o)) {
        for (const auto& u : graph_.matchIds(std::nullopt, t.s, std::nullopt)) {
          derive(u.s, t.o, u.o);
        }
      }
    } else if (t.p == subClass_) {
      for (const auto& u : graph_.matchIds(std::nullopt, type_, t.s)) {
        derive(u.s, type_, t.o);
      }
      for (const auto& u : graph_.matchIds(t.o, subClass_, std::nullopt)) {
        derive(t.s, subClass_, u.o);
      }
      for (const auto& u : graph_.matchIds(std::nullopt, subClass_, t.s)) {
        derive(u.s, subClass_, t.o);
      }
    } else if (t.p == type_) {
      for (const auto& u : graph_.matchIds(t.o, subClass_, std::nullopt)) {
        derive(t.s, type_, u.o);
      }
    } else if (t.p == equivalent_) {
      derive(t.s, subClass_, t.o);
      derive(t.o, subClass_, t.s);
    }
  }

  rdf::TripleStore& graph_;
  std::set<IdTriple>& inferred_;
  std::deque<IdTriple> pending_;
  TermId type_, domain_, range_, subClass_, subProperty_, equivalent_;
};

}  // namespace

// _____________________________________________________________________________
bool ClosureGraph::isInferred(const Triple& triple) const {
  auto s = graph_.lookup(triple.subject);
  auto p = graph_.lookup(triple.predicate);
  auto o = graph_.lookup(triple.object);
  if (!s || !p || !o) return false;
  return inferred_.contains(IdTriple{*s, *p, *o});
}

// _____________________________________________________________________________
std::vector<Triple> ClosureGraph::inferred() const {
  std::vector<Triple> out;
  out.reserve(inferred_.size());
  for (const auto& t : inferred_) out.push_back(graph_.decode(t));
  return out;
}

// _____________________________________________________________________________
std::vector<Triple> ClosureGraph::base() const {
  std::vector<Triple> out;
  for (const auto& t : graph_.matchIds(std::nullopt, std::nullopt, std::nullopt)) {
    if (!inferred_.contains(t)) out.push_back(graph_.decode(t));
  }
  return out;
}

// _____________________________________________________________________________
ClosureGraph computeClosure(const rdf::TripleStore& base) {
  ClosureGraph closure;
  closure.graph_.insertAll(base.triples());
  closure.graph_.prefixes() = base.prefixes();
  Reasoner(closure.graph_, closure.inferred_).run();
  return closure;
}

}  // namespace gridkg::ontology
