#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace gridkg::rdf {

// Prefix label -> namespace IRI. Labels are unique; iteration is sorted by
// label so serializations are stable.
class PrefixMap {
 public:
  PrefixMap() = default;

  // Replaces an existing binding for the same label.
  void set(std::string label, std::string ns);
  std::optional<std::string> namespaceOf(std::string_view label) const;
  bool contains(std::string_view label) const;

  // Throws UnknownPrefixError.
  std::string expand(std::string_view label, std::string_view local) const;

  // Longest namespace that is a prefix of the IRI and leaves a local part
  // that can be written as a prefixed name; nullopt otherwise.
  std::optional<std::pair<std::string, std::string>> compact(
      std::string_view iri) const;

  // Merges `other` into this map; existing labels win.
  void merge(const PrefixMap& other);

  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  friend bool operator==(const PrefixMap&, const PrefixMap&) = default;

 private:
  std::map<std::string, std::string, std::less<>> map_;
};

// artemis, artemis-data, seas, cim, saref, ids, dcat, qb, rdf, rdfs, owl,
// dcterms, vann, vs, xsd, geo.
const PrefixMap& standardPrefixes();

// True if `local` can be written unescaped after "prefix:".
bool isSafeLocalName(std::string_view local);

}  // namespace gridkg::rdf
