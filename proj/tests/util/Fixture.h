#pragma once

#include "gridkg/connectors/Source.h"
#include "gridkg/mapping/Mapping.h"
#include "gridkg/ontology/Closure.h"
#include "gridkg/ontology/Ontology.h"
#include "gridkg/query/Competency.h"
#include "util/Paths.h"

namespace gridkg::testutil {

// The shipped ontology, sources, mappings and CQ catalog, loaded once.
struct ShippedFixture {
  ontology::LoadedOntology ontology;
  connectors::SourceCatalog sources;
  std::vector<mapping::MappingRule> rules;
  query::CompetencyCatalog catalog;
  // Triples generated from the sources only.
  rdf::TripleStore data;
  // Ontology + data, and its closure.
  rdf::TripleStore base;
  ontology::ClosureGraph closure;

  static const ShippedFixture& get() {
    static const ShippedFixture fixture;
    return fixture;
  }

 private:
  ShippedFixture()
      : ontology(ontology::loadModuleDirectory(dataDir() / "ontology")),
        sources(connectors::loadSourceCatalog(dataDir() / "sources" / "sources.json")),
        rules(mapping::loadMappings(dataDir() / "mappings" / "artemis-mappings.json", sources)),
        catalog(query::loadCatalog(dataDir() / "cq" / "catalog.txt")) {
    mapping::materialize(rules, sources, data);
    base.insertAll(ontology.store.triples());
    base.insertAll(data.triples());
    closure = ontology::computeClosure(base);
  }
};

}  // namespace gridkg::testutil
