#include "gridkg/ontology/Ontology.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gridkg/rdf/Turtle.h"
#include "gridkg/rdf/Vocab.h"

namespace gridkg::ontology {

using rdf::Term;
using rdf::Triple;

namespace {

Term iri(std::string_view value) { return Term::iri(std::string(value)); }

bool isDeclarationType(std::string_view type) {
  return type == vocab::kOwlClass || type == vocab::kRdfsClass ||
         type == vocab::kOwlObjectProperty ||
         type == vocab::kOwlDatatypeProperty ||
         type == vocab::kOwlAnnotationProperty ||
         type == vocab::kRdfProperty || type == vocab::kRdfsDatatype;
}

// Subjects a document defines: anything with rdfs:isDefinedBy or a class /
// property declaration.
std::set<std::string> definedTerms(const std::vector<Triple>& triples) {
  std::set<std::string> out;
  for (const auto& t : triples) {
    if (!t.subject.isIri()) continue;
    if (t.predicate.value() == vocab::kRdfsIsDefinedBy ||
        (t.predicate.value() == vocab::kRdfType &&
         isDeclarationType(t.object.value()))) {
      out.insert(t.subject.value());
    }
  }
  return out;
}

std::optional<Term> firstObject(const rdf::TripleStore& store, const Term& s,
                                std::string_view p) {
  auto result = store.match(s, iri(p), std::nullopt);
  if (result.empty()) return std::nullopt;
  // Deterministic pick among several values.
  return std::min_element(result.begin(), result.end())->object;
}

std::string firstValue(const rdf::TripleStore& store, const Term& s,
                       std::string_view p) {
  auto o = firstObject(store, s, p);
  return o ? o->value() : std::string{};
}

TermCategory categoryOf(const rdf::TripleStore& store, const Term& term) {
  bool isClass = false;
  bool isObject = false;
  bool isDatatype = false;
  for (const auto& t : store.match(term, iri(vocab::kRdfType), std::nullopt)) {
    const auto& type = t.object.value();
    isObject |= type == vocab::kOwlObjectProperty || type == vocab::kRdfProperty;
    isDatatype |= type == vocab::kOwlDatatypeProperty;
    isClass |= type == vocab::kOwlClass || type == vocab::kRdfsClass;
  }
  if (isDatatype) return TermCategory::DatatypeProperty;
  if (isObject) return TermCategory::ObjectProperty;
  if (isClass) return TermCategory::Class;
  // Undeclared terms: guess from the axioms they use.
  if (!store.match(term, iri(vocab::kRdfsSubPropertyOf), std::nullopt).empty() ||
      !store.match(term, iri(vocab::kRdfsDomain), std::nullopt).empty() ||
      !store.match(term, iri(vocab::kRdfsRange), std::nullopt).empty()) {
    return TermCategory::ObjectProperty;
  }
  return TermCategory::Class;
}

}  // namespace

// _____________________________________________________________________________
std::string_view toString(TermCategory category) {
  switch (category) {
    case TermCategory::Class:
      return "class";
    case TermCategory::ObjectProperty:
      return "object-property";
    case TermCategory::DatatypeProperty:
      return "datatype-property";
  }
  return "class";
}

// _____________________________________________________________________________
const TermDefinition* OntologyModule::find(std::string_view termIri) const {
  for (const auto& t : terms) {
    if (t.iri == termIri) return &t;
  }
  return nullptr;
}

// _____________________________________________________________________________
const OntologyModule* LoadedOntology::moduleOf(std::string_view termIri) const {
  for (const auto& m : modules) {
    if (m.find(termIri)) return &m;
  }
  return nullptr;
}

// _____________________________________________________________________________
const TermDefinition* LoadedOntology::findTerm(std::string_view termIri) const {
  for (const auto& m : modules) {
    if (const auto* t = m.find(termIri)) return t;
  }
  return nullptr;
}

// _____________________________________________________________________________
bool isBuiltinTerm(std::string_view value) {
  if (value.substr(0, vocab::kXsd.size()) == vocab::kXsd) return true;
  return value == vocab::kRdfsLiteral || value == vocab::kRdfsResource ||
         value == vocab::kRdfsClass || value == vocab::kRdfsDatatype ||
         value == vocab::kRdfProperty || value == vocab::kRdfLangString ||
         value == vocab::kOwlThing || value == vocab::kOwlClass;
}

// _____________________________________________________________________________
bool isDeclared(const rdf::TripleStore& store, std::string_view value) {
  for (const auto& t : store.match(iri(value), iri(vocab::kRdfType), std::nullopt)) {
    if (isDeclarationType(t.object.value())) return true;
  }
  return false;
}

// _____________________________________________________________________________
std::vector<OntologyModule> indexModules(const rdf::TripleStore& store) {
  std::map<std::string, std::vector<std::string>> membership;
  for (const auto& t :
       store.match(std::nullopt, iri(vocab::kRdfsIsDefinedBy), std::nullopt)) {
    if (t.subject.isIri() && t.object.isIri()) {
      membership[t.object.value()].push_back(t.subject.value());
    }
  }
  for (const auto& t :
       store.match(std::nullopt, iri(vocab::kRdfType), iri(vocab::kOwlOntology))) {
    if (t.subject.isIri()) membership.try_emplace(t.subject.value());
  }

  std::vector<OntologyModule> modules;
  for (auto& [moduleIri, members] : membership) {
    OntologyModule m;
    m.iri = moduleIri;
    Term node = iri(moduleIri);
    m.title = firstValue(store, node, vocab::kDctermsTitle);
    m.issued = firstValue(store, node, vocab::kDctermsIssued);
    m.license = firstValue(store, node, vocab::kDctermsLicense);
    m.versionIri = firstValue(store, node, vocab::kOwlVersionIri);
    m.versionLabel = firstValue(store, node, vocab::kOwlVersionInfo);
    m.preferredPrefix = firstValue(store, node, vocab::kVannPrefix);
    m.preferredNamespace = firstValue(store, node, vocab::kVannUri);

    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (const auto& termIri : members) {
      Term term = iri(termIri);
      TermDefinition def;
      def.iri = termIri;
      def.category = categoryOf(store, term);
      def.label = firstObject(store, term, vocab::kRdfsLabel);
      def.comment = firstObject(store, term, vocab::kRdfsComment);
      auto superPredicate =
          def.isProperty() ? vocab::kRdfsSubPropertyOf : vocab::kRdfsSubClassOf;
      for (const auto& t : store.match(term, iri(superPredicate), std::nullopt)) {
        def.superterms.push_back(t.object.value());
      }
      std::sort(def.superterms.begin(), def.superterms.end());
      if (auto d = firstObject(store, term, vocab::kRdfsDomain)) def.domain = d->value();
      if (auto r = firstObject(store, term, vocab::kRdfsRange)) def.range = r->value();
      def.status = firstValue(store, term, vocab::kVsTermStatus);
      m.terms.push_back(std::move(def));
    }
    modules.push_back(std::move(m));
  }
  return modules;
}

// _____________________________________________________________________________
LoadedOntology loadModules(const std::vector<OntologyDocument>& documents) {
  LoadedOntology out;
  std::map<std::string, std::string> definedIn;
  const Term owlSubPropertyOf = iri(vocab::kOwlSubPropertyOf);
  const Term rdfsSubPropertyOf = iri(vocab::kRdfsSubPropertyOf);

  for (const auto& document : documents) {
    auto parsed = rdf::parseTurtle(document.text);
    for (auto& t : parsed.triples) {
      if (t.predicate == owlSubPropertyOf) {
        out.warnings.push_back(document.name + ": owl:subPropertyOf on <" +
                               t.subject.value() +
                               "> read as rdfs:subPropertyOf");
        t.predicate = rdfsSubPropertyOf;
      }
    }
    for (const auto& term : definedTerms(parsed.triples)) {
      auto [it, inserted] = definedIn.try_emplace(term, document.name);
      if (!inserted) throw ModuleConflictError(term, it->second, document.name);
    }
    out.store.insertAll(parsed.triples);
    out.store.prefixes().merge(parsed.prefixes);
  }

  // One term, two modules (possibly from the same document).
  std::map<std::string, std::string> moduleOfTerm;
  for (const auto& t : out.store.match(std::nullopt, iri(vocab::kRdfsIsDefinedBy),
                                       std::nullopt)) {
    auto [it, inserted] = moduleOfTerm.try_emplace(t.subject.value(), t.object.value());
    if (!inserted && it->second != t.object.value()) {
      throw ModuleConflictError(t.subject.value(), it->second, t.object.value());
    }
  }

  out.modules = indexModules(out.store);
  for (const auto& m : out.modules) {
    for (const auto& term : m.terms) {
      if (!isDeclared(out.store, term.iri)) {
        out.warnings.push_back("term <" + term.iri + "> has no class or property declaration");
      }
    }
  }
  return out;
}

// _____________________________________________________________________________
LoadedOntology loadModuleDirectory(const std::filesystem::path& directory) {
  if (!std::filesystem::is_directory(directory)) {
    throw IoError("ontology directory not found: " + directory.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ttl") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<OntologyDocument> documents;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot read " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    documents.push_back({file.filename().string(), buffer.str()});
  }
  return loadModules(documents);
}

}  // namespace gridkg::ontology
