#pragma once

#include <string_view>

// Namespace and term IRIs shared across modules.
namespace gridkg::vocab {

inline constexpr std::string_view kRdf =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kDcterms = "http://purl.org/dc/terms/";
inline constexpr std::string_view kVann = "http://purl.org/vocab/vann/";
inline constexpr std::string_view kVs =
    "http://www.w3.org/2003/06/sw-vocab-status/ns#";
inline constexpr std::string_view kDcat = "http://www.w3.org/ns/dcat#";
inline constexpr std::string_view kQb = "http://purl.org/linked-data/cube#";
inline constexpr std::string_view kGeo =
    "http://www.w3.org/2003/01/geo/wgs84_pos#";
inline constexpr std::string_view kSeas = "https://w3id.org/seas/";
inline constexpr std::string_view kCim = "http://iec.ch/TC57/CIM100#";
inline constexpr std::string_view kSaref = "https://saref.etsi.org/core/";
inline constexpr std::string_view kIds = "https://w3id.org/idsa/core/";
inline constexpr std::string_view kArtemis = "https://projekat-artemis.rs/";
inline constexpr std::string_view kArtemisData =
    "https://projekat-artemis.rs/data/";

inline constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfProperty =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
inline constexpr std::string_view kRdfLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

inline constexpr std::string_view kRdfsSubClassOf =
    "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kRdfsSubPropertyOf =
    "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
inline constexpr std::string_view kRdfsDomain =
    "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr std::string_view kRdfsRange =
    "http://www.w3.org/2000/01/rdf-schema#range";
inline constexpr std::string_view kRdfsLabel =
    "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view kRdfsComment =
    "http://www.w3.org/2000/01/rdf-schema#comment";
inline constexpr std::string_view kRdfsIsDefinedBy =
    "http://www.w3.org/2000/01/rdf-schema#isDefinedBy";
inline constexpr std::string_view kRdfsClass =
    "http://www.w3.org/2000/01/rdf-schema#Class";
inline constexpr std::string_view kRdfsDatatype =
    "http://www.w3.org/2000/01/rdf-schema#Datatype";
inline constexpr std::string_view kRdfsLiteral =
    "http://www.w3.org/2000/01/rdf-schema#Literal";
inline constexpr std::string_view kRdfsResource =
    "http://www.w3.org/2000/01/rdf-schema#Resource";

inline constexpr std::string_view kOwlOntology =
    "http://www.w3.org/2002/07/owl#Ontology";
inline constexpr std::string_view kOwlClass =
    "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view kOwlObjectProperty =
    "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr std::string_view kOwlDatatypeProperty =
    "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr std::string_view kOwlAnnotationProperty =
    "http://www.w3.org/2002/07/owl#AnnotationProperty";
inline constexpr std::string_view kOwlThing =
    "http://www.w3.org/2002/07/owl#Thing";
inline constexpr std::string_view kOwlEquivalentClass =
    "http://www.w3.org/2002/07/owl#equivalentClass";
inline constexpr std::string_view kOwlSubPropertyOf =
    "http://www.w3.org/2002/07/owl#subPropertyOf";
inline constexpr std::string_view kOwlVersionIri =
    "http://www.w3.org/2002/07/owl#versionIRI";
inline constexpr std::string_view kOwlVersionInfo =
    "http://www.w3.org/2002/07/owl#versionInfo";

inline constexpr std::string_view kXsdString =
    "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kXsdInteger =
    "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kXsdDecimal =
    "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kXsdDouble =
    "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view kXsdBoolean =
    "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view kXsdDateTime =
    "http://www.w3.org/2001/XMLSchema#dateTime";
inline constexpr std::string_view kXsdDate =
    "http://www.w3.org/2001/XMLSchema#date";

inline constexpr std::string_view kDctermsTitle = "http://purl.org/dc/terms/title";
inline constexpr std::string_view kDctermsIssued =
    "http://purl.org/dc/terms/issued";
inline constexpr std::string_view kDctermsLicense =
    "http://purl.org/dc/terms/license";
inline constexpr std::string_view kVannPrefix =
    "http://purl.org/vocab/vann/preferredNamespacePrefix";
inline constexpr std::string_view kVannUri =
    "http://purl.org/vocab/vann/preferredNamespaceUri";
inline constexpr std::string_view kVsTermStatus =
    "http://www.w3.org/2003/06/sw-vocab-status/ns#term_status";

inline constexpr std::string_view kSeasForecast = "https://w3id.org/seas/Forecast";

}  // namespace gridkg::vocab
