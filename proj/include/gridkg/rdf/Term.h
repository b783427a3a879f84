#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "gridkg/util/Error.h"

namespace gridkg::rdf {

// An RDF term: IRI, blank node or literal. Terms are immutable values; the
// factories enforce the data model invariants:
//   - a literal carries either a datatype or a language tag, never both, and
//     a literal without either is typed xsd:string;
//   - IRIs contain no whitespace or characters forbidden in IRIREF.
class Term {
 public:
  enum class Kind : unsigned char { Iri, Blank, Literal };

  Term() = default;

  static Term iri(std::string value);
  static Term blank(std::string label);
  // An empty datatype means xsd:string.
  static Term literal(std::string lexical, std::string datatype = {});
  static Term langLiteral(std::string lexical, std::string language);

  Kind kind() const { return kind_; }
  bool isIri() const { return kind_ == Kind::Iri; }
  bool isBlank() const { return kind_ == Kind::Blank; }
  bool isLiteral() const { return kind_ == Kind::Literal; }

  // IRI string, blank label or lexical form.
  const std::string& value() const { return value_; }
  // Empty for language-tagged literals and non-literals.
  const std::string& datatype() const { return datatype_; }
  const std::string& language() const { return language_; }

  // N-Triples rendering, used for diagnostics and hashing-stable output.
  std::string toNTriples() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  Kind kind_ = Kind::Iri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

class InvalidTermError : public Error {
 public:
  using Error::Error;
};

bool isValidIri(std::string_view iri);
bool isAbsoluteIri(std::string_view iri);
bool isValidBlankLabel(std::string_view label);

// Escapes a lexical form for a double-quoted Turtle/N-Triples string.
std::string escapeString(std::string_view text);

}  // namespace gridkg::rdf

template <>
struct std::hash<gridkg::rdf::Term> {
  std::size_t operator()(const gridkg::rdf::Term& t) const noexcept {
    std::size_t h = std::hash<std::string>{}(t.value());
    h ^= std::hash<std::string>{}(t.datatype()) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
    h ^= std::hash<std::string>{}(t.language()) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(t.kind());
  }
};
