#include "gridkg/rdf/PrefixMap.h"

#include <cctype>

#include "gridkg/rdf/Vocab.h"
#include "gridkg/util/Error.h"

namespace gridkg::rdf {

// _____________________________________________________________________________
void PrefixMap::set(std::string label, std::string ns) {
  map_.insert_or_assign(std::move(label), std::move(ns));
}

// _____________________________________________________________________________
std::optional<std::string> PrefixMap::namespaceOf(std::string_view label) const {
  auto it = map_.find(label);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

// _____________________________________________________________________________
bool PrefixMap::contains(std::string_view label) const {
  return map_.find(label) != map_.end();
}

// _____________________________________________________________________________
std::string PrefixMap::expand(std::string_view label,
                              std::string_view local) const {
  auto it = map_.find(label);
  if (it == map_.end()) throw UnknownPrefixError(std::string(label));
  return it->second + std::string(local);
}

// _____________________________________________________________________________
bool isSafeLocalName(std::string_view local) {
  // Conservative subset of PN_LOCAL: no escapes, no ':' or '.', no leading
  // '-'. Anything else is written as a full IRI.
  if (local.empty()) return true;
  if (local.front() == '-') return false;
  for (unsigned char c : local) {
    if (!std::isalnum(c) && c != '_' && c != '-') return false;
  }
  return true;
}

// _____________________________________________________________________________
std::optional<std::pair<std::string, std::string>> PrefixMap::compact(
    std::string_view iri) const {
  std::optional<std::pair<std::string, std::string>> best;
  std::size_t bestLength = 0;
  for (const auto& [label, ns] : map_) {
    if (ns.empty() || ns.size() > iri.size() || ns.size() <= bestLength) {
      continue;
    }
    if (iri.compare(0, ns.size(), ns) != 0) continue;
    std::string_view local = iri.substr(ns.size());
    if (!isSafeLocalName(local)) continue;
    best = std::make_pair(label, std::string(local));
    bestLength = ns.size();
  }
  return best;
}

// _____________________________________________________________________________
void PrefixMap::merge(const PrefixMap& other) {
  for (const auto& [label, ns] : other.map_) map_.try_emplace(label, ns);
}

// _____________________________________________________________________________
const PrefixMap& standardPrefixes() {
  static const PrefixMap prefixes = [] {
    PrefixMap p;
    p.set("artemis", std::string(vocab::kArtemis));
    p.set("artemis-data", std::string(vocab::kArtemisData));
    p.set("seas", std::string(vocab::kSeas));
    p.set("cim", std::string(vocab::kCim));
    p.set("saref", std::string(vocab::kSaref));
    p.set("ids", std::string(vocab::kIds));
    p.set("dcat", std::string(vocab::kDcat));
    p.set("qb", std::string(vocab::kQb));
    p.set("rdf", std::string(vocab::kRdf));
    p.set("rdfs", std::string(vocab::kRdfs));
    p.set("owl", std::string(vocab::kOwl));
    p.set("dcterms", std::string(vocab::kDcterms));
    p.set("vann", std::string(vocab::kVann));
    p.set("vs", std::string(vocab::kVs));
    p.set("xsd", std::string(vocab::kXsd));
    p.set("geo", std::string(vocab::kGeo));
    return p;
  }();
  return prefixes;
}

}  // namespace gridkg::rdf
