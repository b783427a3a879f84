#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "gridkg/rdf/PrefixMap.h"
#include "gridkg/rdf/Triple.h"

namespace gridkg::rdf {

using TermId = std::uint64_t;

struct IdTriple {
  TermId s = 0;
  TermId p = 0;
  TermId o = 0;
  friend bool operator==(const IdTriple&, const IdTriple&) = default;
  friend auto operator<=>(const IdTriple&, const IdTriple&) = default;
};

class UnknownTermIdError : public Error {
 public:
  explicit UnknownTermIdError(TermId id)
      : Error("unknown term id " + std::to_string(id)) {}
};

// Bijective term <-> dense id mapping. Ids are assigned in first-seen order
// starting at 0 and are only meaningful within one dictionary instance.
class TermDictionary {
 public:
  TermId encode(const Term& term);
  std::optional<TermId> lookup(const Term& term) const;
  // Throws UnknownTermIdError.
  const Term& decode(TermId id) const;
  std::size_t size() const { return terms_.size(); }

 private:
  std::unordered_map<Term, TermId> ids_;
  std::vector<Term> terms_;
};

// The three index permutations kept by the store.
enum class IndexOrder { Spo, Pos, Osp };

// Dictionary-encoded triple set with three sorted permutation indexes.
//
// Thread safety: const member functions may run concurrently with each other;
// non-const member functions need exclusive access (one writer OR many
// readers). `match` returns a materialized snapshot, so results stay valid
// and unchanged while the store is modified afterwards.
class TripleStore {
 public:
  TripleStore() = default;

  // Returns whether the triple was new. Subjects must not be literals and
  // predicates must be IRIs (InvalidTermError otherwise).
  bool insert(const Triple& triple);
  bool insert(const IdTriple& triple);
  template <typename Range>
  std::size_t insertAll(const Range& triples) {
    std::size_t added = 0;
    for (const auto& t : triples) added += insert(t) ? 1 : 0;
    return added;
  }

  bool contains(const Triple& triple) const;
  bool contains(const IdTriple& triple) const;

  // Triples agreeing with every bound position, read from the index whose
  // bound prefix is longest.
  std::vector<Triple> match(const std::optional<Term>& s,
                            const std::optional<Term>& p,
                            const std::optional<Term>& o) const;
  std::vector<IdTriple> matchIds(std::optional<TermId> s,
                                 std::optional<TermId> p,
                                 std::optional<TermId> o) const;
  std::size_t count(std::optional<TermId> s, std::optional<TermId> p,
                    std::optional<TermId> o) const;

  std::size_t size() const { return spo_.size(); }
  bool empty() const { return spo_.empty(); }

  // All triples in (s,p,o) id order.
  std::vector<Triple> triples() const;
  // Raw contents of one permutation, rotated back to (s,p,o).
  std::vector<IdTriple> indexContents(IndexOrder order) const;

  TermId encode(const Term& term) { return dictionary_.encode(term); }
  std::optional<TermId> lookup(const Term& term) const {
    return dictionary_.lookup(term);
  }
  const Term& decode(TermId id) const { return dictionary_.decode(id); }
  Triple decode(const IdTriple& t) const;
  const TermDictionary& dictionary() const { return dictionary_; }

  PrefixMap& prefixes() { return prefixes_; }
  const PrefixMap& prefixes() const { return prefixes_; }

 private:
  using Key = std::array<TermId, 3>;

  TermDictionary dictionary_;
  std::set<Key> spo_;
  std::set<Key> pos_;
  std::set<Key> osp_;
  PrefixMap prefixes_;
};

}  // namespace gridkg::rdf
