#include "gridkg/ontology/Validation.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "gridkg/rdf/Vocab.h"

namespace gridkg::ontology {

using rdf::Term;

namespace {

Term iri(std::string_view value) { return Term::iri(std::string(value)); }

bool isDatatypeTarget(const rdf::TripleStore& store, const std::string& target) {
  if (target.starts_with(vocab::kXsd) || target == vocab::kRdfsLiteral ||
      target == vocab::kRdfLangString) {
    return true;
  }
  return store.contains(
      rdf::Triple{iri(target), iri(vocab::kRdfType), iri(vocab::kRdfsDatatype)});
}

// Strongly connected components of size >= 2 (Tarjan).
std::vector<std::vector<std::string>> cycles(
    const std::map<std::string, std::set<std::string>>& edges) {
  std::map<std::string, int> index;
  std::map<std::string, int> low;
  std::set<std::string> onStack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> out;
  int counter = 0;

  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    onStack.insert(v);
    if (auto it = edges.find(v); it != edges.end()) {
      for (const auto& w : it->second) {
        if (!index.contains(w)) {
          visit(w);
          low[v] = std::min(low[v], low[w]);
        } else if (onStack.contains(w)) {
          low[v] = std::min(low[v], index[w]);
        }
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> component;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        onStack.erase(w);
        component.push_back(w);
      } while (w != v);
      if (component.size() >= 2) {
        std::sort(component.begin(), component.end());
        out.push_back(std::move(component));
      }
    }
  };
  for (const auto& [v, targets] : edges) {
    if (!index.contains(v)) visit(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

}  // namespace

// _____________________________________________________________________________
std::string_view toString(FindingKind kind) {
  switch (kind) {
    case FindingKind::SubClassCycle:
      return "subclass-cycle";
    case FindingKind::DanglingReference:
      return "dangling-reference";
    case FindingKind::LiteralRangeMisuse:
      return "literal-range-misuse";
  }
  return "unknown";
}

// _____________________________________________________________________________
bool ValidationReport::hasFailures() const {
  return !coherence.empty() ||
         std::any_of(competency.begin(), competency.end(),
                     [](const auto& r) { return !r.passed; });
}

// _____________________________________________________________________________
ValidationReport validate(const rdf::TripleStore& store,
                          const std::vector<OntologyModule>& modules) {
  ValidationReport report;

  for (const auto& m : modules) {
    for (const auto& t : m.terms) {
      ++report.termCount;
      if (t.label && t.comment) ++report.clearTermCount;
    }
  }
  if (report.termCount > 0) {
    report.clarity = static_cast<double>(report.clearTermCount) /
                     static_cast<double>(report.termCount);
  }

  // Cycles over asserted subClassOf edges between distinct terms.
  std::map<std::string, std::set<std::string>> edges;
  for (const auto& t :
       store.match(std::nullopt, iri(vocab::kRdfsSubClassOf), std::nullopt)) {
    if (t.subject != t.object && !t.object.isLiteral()) {
      edges[t.subject.value()].insert(t.object.value());
    }
  }
  for (auto& component : cycles(edges)) {
    report.coherence.push_back({FindingKind::SubClassCycle, component,
                                "subClassOf cycle {" + join(component) + "}"});
  }

  for (const auto& m : modules) {
    for (const auto& t : m.terms) {
      std::vector<std::pair<std::string, std::string>> targets;
      for (const auto& s : t.superterms) targets.emplace_back(s, "superterm");
      if (t.domain) targets.emplace_back(*t.domain, "domain");
      if (t.range) targets.emplace_back(*t.range, "range");
      for (const auto& [target, role] : targets) {
        if (isBuiltinTerm(target) || isDeclared(store, target)) continue;
        std::vector<std::string> terms = {t.iri, target};
        std::sort(terms.begin(), terms.end());
        report.coherence.push_back({FindingKind::DanglingReference, std::move(terms),
                                    "<" + t.iri + "> has undeclared " + role + " <" +
                                        target + ">"});
      }
    }
  }

  std::set<std::pair<std::string, std::string>> misuses;
  for (const auto& r : store.match(std::nullopt, iri(vocab::kRdfsRange), std::nullopt)) {
    if (!r.subject.isIri() || !isDatatypeTarget(store, r.object.value())) continue;
    for (const auto& t : store.match(std::nullopt, r.subject, std::nullopt)) {
      if (!t.object.isLiteral()) {
        misuses.emplace(r.subject.value(), t.subject.value());
      }
    }
  }
  for (const auto& [property, subject] : misuses) {
    std::vector<std::string> terms = {property, subject};
    std::sort(terms.begin(), terms.end());
    report.coherence.push_back(
        {FindingKind::LiteralRangeMisuse, std::move(terms),
         "<" + property + "> has a literal range but <" + subject +
             "> uses it with a non-literal object"});
  }

  for (const auto& m : modules) {
    ModuleModularity mod;
    mod.module = m.iri;
    for (const auto& t : m.terms) {
      std::vector<std::string> targets = t.superterms;
      if (t.domain) targets.push_back(*t.domain);
      if (t.range) targets.push_back(*t.range);
      for (const auto& target : targets) {
        if (isBuiltinTerm(target) || isDatatypeTarget(store, target)) continue;
        if (m.find(target)) {
          ++mod.internalRefs;
        } else {
          ++mod.externalRefs;
        }
      }
    }
    if (mod.internalRefs + mod.externalRefs > 0) {
      mod.score = static_cast<double>(mod.internalRefs) /
                  static_cast<double>(mod.internalRefs + mod.externalRefs);
    }
    report.modularity.push_back(std::move(mod));
  }
  return report;
}

}  // namespace gridkg::ontology
