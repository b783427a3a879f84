#include "gridkg/rdf/TripleStore.h"

#include <limits>

namespace gridkg::rdf {

// _____________________________________________________________________________
TermId TermDictionary::encode(const Term& term) {
  auto [it, inserted] = ids_.try_emplace(term, terms_.size());
  if (inserted) terms_.push_back(term);
  return it->second;
}

// _____________________________________________________________________________
std::optional<TermId> TermDictionary::lookup(const Term& term) const {
  auto it = ids_.find(term);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

// _____________________________________________________________________________
const Term& TermDictionary::decode(TermId id) const {
  if (id >= terms_.size()) throw UnknownTermIdError(id);
  return terms_[id];
}

// _____________________________________________________________________________
bool TripleStore::insert(const Triple& triple) {
  if (triple.subject.isLiteral() || !triple.predicate.isIri()) {
    throw InvalidTermError("ill-formed triple " + triple.toNTriples());
  }
  return insert(IdTriple{encode(triple.subject), encode(triple.predicate),
                         encode(triple.object)});
}

// _____________________________________________________________________________
bool TripleStore::insert(const IdTriple& t) {
  if (!spo_.insert({t.s, t.p, t.o}).second) return false;
  pos_.insert({t.p, t.o, t.s});
  osp_.insert({t.o, t.s, t.p});
  return true;
}

// _____________________________________________________________________________
bool TripleStore::contains(const IdTriple& t) const {
  return spo_.count({t.s, t.p, t.o}) > 0;
}

// _____________________________________________________________________________
bool TripleStore::contains(const Triple& triple) const {
  auto s = lookup(triple.subject);
  auto p = lookup(triple.predicate);
  auto o = lookup(triple.object);
  return s && p && o && contains(IdTriple{*s, *p, *o});
}

namespace {

constexpr TermId kMaxId = std::numeric_limits<TermId>::max();

// Visits every key of `index` whose first `bound` components equal those of
// `prefix`.
template <typename F>
void scanPrefix(const std::set<std::array<TermId, 3>>& index,
                const std::array<TermId, 3>& prefix, int bound, F&& visit) {
  std::array<TermId, 3> low = prefix;
  std::array<TermId, 3> high = prefix;
  for (int i = bound; i < 3; ++i) {
    low[i] = 0;
    high[i] = kMaxId;
  }
  auto end = index.upper_bound(high);
  for (auto it = index.lower_bound(low); it != end; ++it) visit(*it);
}

}  // namespace

// _____________________________________________________________________________
std::vector<IdTriple> TripleStore::matchIds(std::optional<TermId> s,
                                            std::optional<TermId> p,
                                            std::optional<TermId> o) const {
  std::vector<IdTriple> out;
  // Pick the permutation whose leading components are all bound.
  if (s && p && o) {
    if (contains(IdTriple{*s, *p, *o})) out.push_back({*s, *p, *o});
  } else if (s && p) {
    scanPrefix(spo_, {*s, *p, 0}, 2,
               [&](const auto& k) { out.push_back({k[0], k[1], k[2]}); });
  } else if (p && o) {
    scanPrefix(pos_, {*p, *o, 0}, 2,
               [&](const auto& k) { out.push_back({k[2], k[0], k[1]}); });
  } else if (o && s) {
    scanPrefix(osp_, {*o, *s, 0}, 2,
               [&](const auto& k) { out.push_back({k[1], k[2], k[0]}); });
  } else if (s) {
    scanPrefix(spo_, {*s, 0, 0}, 1,
               [&](const auto& k) { out.push_back({k[0], k[1], k[2]}); });
  } else if (p) {
    scanPrefix(pos_, {*p, 0, 0}, 1,
               [&](const auto& k) { out.push_back({k[2], k[0], k[1]}); });
  } else if (o) {
    scanPrefix(osp_, {*o, 0, 0}, 1,
               [&](const auto& k) { out.push_back({k[1], k[2], k[0]}); });
  } else {
    out.reserve(spo_.size());
    for (const auto& k : spo_) out.push_back({k[0], k[1], k[2]});
  }
  return out;
}

// _____________________________________________________________________________
std::size_t TripleStore::count(std::optional<TermId> s, std::optional<TermId> p,
                               std::optional<TermId> o) const {
  if (!s && !p && !o) return spo_.size();
  std::size_t n = 0;
  auto counter = [&n](const auto&) { ++n; };
  if (s && p && o) return contains(IdTriple{*s, *p, *o}) ? 1 : 0;
  if (s && p) {
    scanPrefix(spo_, {*s, *p, 0}, 2, counter);
  } else if (p && o) {
    scanPrefix(pos_, {*p, *o, 0}, 2, counter);
  } else if (o && s) {
    scanPrefix(osp_, {*o, *s, 0}, 2, counter);
  } else if (s) {
    scanPrefix(spo_, {*s, 0, 0}, 1, counter);
  } else if (p) {
    scanPrefix(pos_, {*p, 0, 0}, 1, counter);
  } else {
    scanPrefix(osp_, {*o, 0, 0}, 1, counter);
  }
  return n;
}

// _____________________________________________________________________________
std::vector<Triple> TripleStore::match(const std::optional<Term>& s,
                                       const std::optional<Term>& p,
                                       const std::optional<Term>& o) const {
  std::optional<TermId> sid, pid, oid;
  // A bound term that was never encoded cannot match anything.
  if (s && !(sid = lookup(*s))) return {};
  if (p && !(pid = lookup(*p))) return {};
  if (o && !(oid = lookup(*o))) return {};
  std::vector<Triple> out;
  for (const auto& t : matchIds(sid, pid, oid)) out.push_back(decode(t));
  return out;
}

// _____________________________________________________________________________
Triple TripleStore::decode(const IdTriple& t) const {
  return Triple{decode(t.s), decode(t.p), decode(t.o)};
}

// _____________________________________________________________________________
std::vector<Triple> TripleStore::triples() const {
  std::vector<Triple> out;
  out.reserve(spo_.size());
  for (const auto& k : spo_) out.push_back(decode(IdTriple{k[0], k[1], k[2]}));
  return out;
}

// _____________________________________________________________________________
std::vector<IdTriple> TripleStore::indexContents(IndexOrder order) const {
  std::vector<IdTriple> out;
  switch (order) {
    case IndexOrder::Spo:
      for (const auto& k : spo_) out.push_back({k[0], k[1], k[2]});
      break;
    case IndexOrder::Pos:
      for (const auto& k : pos_) out.push_back({k[2], k[0], k[1]});
      break;
    case IndexOrder::Osp:
      for (const auto& k : osp_) out.push_back({k[1], k[2], k[0]});
      break;
  }
  return out;
}

}  // namespace gridkg::rdf
