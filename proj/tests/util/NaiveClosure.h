#pragma once

#include <map>
#include <random>
#include <set>
#include <vector>

#include "gridkg/rdf/Triple.h"
#include "gridkg/rdf/Vocab.h"

namespace gridkg::testutil {

// Test oracle for the RDFS-lite closure: apply every rule to the whole set,
// round after round, until nothing changes. Deliberately shares no code with
// the library's worklist reasoner.
class NaiveClosure {
 public:
  using TripleSet = std::set<rdf::Triple>;

  // All conclusions of one rule round over `g` (including ones already in g).
  static TripleSet oneRound(const TripleSet& g) {
    const rdf::Term type = iri(vocab::kRdfType);
    const rdf::Term sc = iri(vocab::kRdfsSubClassOf);
    const rdf::Term sp = iri(vocab::kRdfsSubPropertyOf);
    const rdf::Term domain = iri(vocab::kRdfsDomain);
    const rdf::Term range = iri(vocab::kRdfsRange);
    const rdf::Term eq = iri(vocab::kOwlEquivalentClass);

    std::map<rdf::Term, std::vector<const rdf::Triple*>> byPredicate;
    for (const auto& t : g) byPredicate[t.predicate].push_back(&t);
    auto with = [&byPredicate](const rdf::Term& p) {
      static const std::vector<const rdf::Triple*> kNone;
      auto it = byPredicate.find(p);
      return it == byPredicate.end() ? kNone : it->second;
    };

    TripleSet out;
    auto add = [&out](const rdf::Term& s, const rdf::Term& p, const rdf::Term& o) {
      if (!s.isLiteral()) out.insert(rdf::Triple{s, p, o});
    };
    for (const auto* d : with(domain)) {
      for (const auto* t : with(d->subject)) add(t->subject, type, d->object);
    }
    for (const auto* r : with(range)) {
      for (const auto* t : with(r->subject)) {
        if (!t->object.isLiteral()) add(t->object, type, r->object);
      }
    }
    for (const auto* a : with(sp)) {
      for (const auto* b : with(sp)) {
        if (a->object == b->subject) add(a->subject, sp, b->object);
      }
      if (a->object.isIri()) {
        for (const auto* t : with(a->subject)) add(t->subject, a->object, t->object);
      }
    }
    for (const auto* a : with(sc)) {
      for (const auto* b : with(sc)) {
        if (a->object == b->subject) add(a->subject, sc, b->object);
      }
      for (const auto* t : with(type)) {
        if (t->object == a->subject) add(t->subject, type, a->object);
      }
    }
    for (const auto* e : with(eq)) {
      add(e->subject, sc, e->object);
      add(e->object, sc, e->subject);
    }
    return out;
  }

  // Inferred triples only (fixpoint minus base).
  static TripleSet inferred(const std::vector<rdf::Triple>& base) {
    TripleSet g(base.begin(), base.end());
    while (true) {
      std::size_t before = g.size();
      for (const auto& t : oneRound(g)) g.insert(t);
      if (g.size() == before) break;
    }
    for (const auto& t : base) g.erase(t);
    return g;
  }

 private:
  static rdf::Term iri(std::string_view v) { return rdf::Term::iri(std::string(v)); }
};

// Random graphs mixing schema axioms and instance data over a small
// vocabulary, including ill-typed corners (literal objects of schema
// predicates, blank nodes, subproperties of rdf:type).
inline std::vector<rdf::Triple> randomSchemaGraph(std::mt19937_64& rng,
                                                  std::size_t size) {
  using rdf::Term;
  std::uniform_int_distribution<int> pick(0, 1 << 20);
  auto ex = [](const std::string& local) { return Term::iri("http://example.org/" + local); };
  auto cls = [&] { return ex("C" + std::to_string(pick(rng) % 8)); };
  auto prop = [&] { return ex("p" + std::to_string(pick(rng) % 6)); };
  auto inst = [&]() -> Term {
    int n = pick(rng) % 12;
    if (n >= 10) return Term::blank("b" + std::to_string(n));
    return ex("i" + std::to_string(n));
  };
  auto lit = [&] { return Term::literal(std::to_string(pick(rng) % 5)); };
  const Term type = Term::iri(std::string(vocab::kRdfType));
  std::vector<rdf::Triple> out;
  for (std::size_t i = 0; i < size; ++i) {
    switch (pick(rng) % 10) {
      case 0:
        out.push_back({cls(), Term::iri(std::string(vocab::kRdfsSubClassOf)), cls()});
        break;
      case 1:
        out.push_back({prop(), Term::iri(std::string(vocab::kRdfsSubPropertyOf)),
                       pick(rng) % 10 == 0 ? type : prop()});
        break;
      case 2:
        out.push_back({prop(), Term::iri(std::string(vocab::kRdfsDomain)), cls()});
        break;
      case 3:
        out.push_back({prop(), Term::iri(std::string(vocab::kRdfsRange)),
                       pick(rng) % 8 == 0 ? lit() : cls()});
        break;
      case 4:
        if (pick(rng) % 3 == 0) {
          out.push_back({cls(), Term::iri(std::string(vocab::kOwlEquivalentClass)), cls()});
        } else {
          out.push_back({inst(), type, cls()});
        }
        break;
      default:
        out.push_back({inst(), prop(), pick(rng) % 3 == 0 ? lit() : inst()});
        break;
    }
  }
  return out;
}

}  // namespace gridkg::testutil
