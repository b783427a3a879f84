#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gridkg/rdf/TripleStore.h"

namespace gridkg::ontology {

enum class TermCategory { Class, ObjectProperty, DatatypeProperty };

std::string_view toString(TermCategory category);

// One class or property, as declared by its module.
struct TermDefinition {
  std::string iri;
  TermCategory category = TermCategory::Class;
  std::optional<rdf::Term> label;
  std::optional<rdf::Term> comment;
  // rdfs:subClassOf targets for classes, rdfs:subPropertyOf for properties.
  std::vector<std::string> superterms;
  std::optional<std::string> domain;
  std::optional<std::string> range;
  std::string status;

  bool isProperty() const { return category != TermCategory::Class; }
};

// An ontology module: the owl:Ontology header plus every term whose
// rdfs:isDefinedBy names it.
struct OntologyModule {
  std::string iri;
  std::string title;
  std::string versionIri;
  std::string versionLabel;
  std::string issued;
  std::string license;
  std::string preferredPrefix;
  std::string preferredNamespace;
  std::vector<TermDefinition> terms;

  const TermDefinition* find(std::string_view termIri) const;
};

struct OntologyDocument {
  std::string name;
  std::string text;
};

struct LoadedOntology {
  rdf::TripleStore store;
  std::vector<OntologyModule> modules;
  std::vector<std::string> warnings;

  const OntologyModule* moduleOf(std::string_view termIri) const;
  const TermDefinition* findTerm(std::string_view termIri) const;
};

// A term defined in more than one document or module.
class ModuleConflictError : public Error {
 public:
  ModuleConflictError(std::string term, const std::string& first,
                      const std::string& second)
      : Error("term <" + term + "> is defined in both " + first + " and " +
              second),
        term_(std::move(term)) {}
  const std::string& term() const { return term_; }

 private:
  std::string term_;
};

// Parses and merges the documents. owl:subPropertyOf is rewritten to
// rdfs:subPropertyOf with a warning. Throws ModuleConflictError, ParseError,
// UnknownPrefixError.
LoadedOntology loadModules(const std::vector<OntologyDocument>& documents);

// Loads every *.ttl file of a directory, in file name order.
LoadedOntology loadModuleDirectory(const std::filesystem::path& directory);

// Rebuilds the module index of an already merged store.
std::vector<OntologyModule> indexModules(const rdf::TripleStore& store);

// Terms typed as a class or property anywhere in the store.
bool isDeclared(const rdf::TripleStore& store, std::string_view iri);

// XSD datatypes, rdfs:Literal/Resource/Class, owl:Thing and friends.
bool isBuiltinTerm(std::string_view iri);

}  // namespace gridkg::ontology
