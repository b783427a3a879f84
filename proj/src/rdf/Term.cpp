#include "gridkg/rdf/Term.h"

#include <cctype>
#include <cstdio>

#include "gridkg/rdf/Triple.h"
#include "gridkg/rdf/Vocab.h"

namespace gridkg::rdf {

namespace {
bool isForbiddenIriChar(unsigned char c) {
  if (c <= 0x20) return true;
  switch (c) {
    case '<':
    case '>':
    case '"':
    case '{':
    case '}':
    case '|':
    case '^':
    case '`':
    case '\\':
      return true;
    default:
      return false;
  }
}
}  // namespace

// _____________________________________________________________________________
bool isValidIri(std::string_view iri) {
  for (unsigned char c : iri) {
    if (isForbiddenIriChar(c)) return false;
  }
  return true;
}

// _____________________________________________________________________________
bool isAbsoluteIri(std::string_view iri) {
  if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri.front()))) {
    return false;
  }
  for (std::size_t i = 1; i < iri.size(); ++i) {
    unsigned char c = iri[i];
    if (c == ':') return true;
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return false;
}

// _____________________________________________________________________________
bool isValidBlankLabel(std::string_view label) {
  if (label.empty() || label.back() == '.') return false;
  for (std::size_t i = 0; i < label.size(); ++i) {
    unsigned char c = label[i];
    bool ok = std::isalnum(c) || c == '_' || c >= 0x80 ||
              (i > 0 && (c == '-' || c == '.'));
    if (!ok) return false;
  }
  return true;
}

// _____________________________________________________________________________
Term Term::iri(std::string value) {
  if (!isValidIri(value)) {
    throw InvalidTermError("invalid IRI <" + value + ">");
  }
  Term t;
  t.kind_ = Kind::Iri;
  t.value_ = std::move(value);
  return t;
}

// _____________________________________________________________________________
Term Term::blank(std::string label) {
  if (!isValidBlankLabel(label)) {
    throw InvalidTermError("invalid blank node label '" + label + "'");
  }
  Term t;
  t.kind_ = Kind::Blank;
  t.value_ = std::move(label);
  return t;
}

// _____________________________________________________________________________
Term Term::literal(std::string lexical, std::string datatype) {
  Term t;
  t.kind_ = Kind::Literal;
  t.value_ = std::move(lexical);
  t.datatype_ = datatype.empty() ? std::string(vocab::kXsdString)
                                 : std::move(datatype);
  if (!isValidIri(t.datatype_)) {
    throw InvalidTermError("invalid datatype IRI <" + t.datatype_ + ">");
  }
  return t;
}

// _____________________________________________________________________________
Term Term::langLiteral(std::string lexical, std::string language) {
  if (language.empty()) return literal(std::move(lexical));
  Term t;
  t.kind_ = Kind::Literal;
  t.value_ = std::move(lexical);
  t.language_ = std::move(language);
  return t;
}

// _____________________________________________________________________________
std::string escapeString(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (unsigned char c : text) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '"':
        out += "\\\"";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (c < 0x20 || c == 0x7f) {
          char buffer[8];
          std::snprintf(buffer, sizeof(buffer), "\\u%04X", c);
          out += buffer;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

// _____________________________________________________________________________
std::string Term::toNTriples() const {
  switch (kind_) {
    case Kind::Iri:
      return "<" + value_ + ">";
    case Kind::Blank:
      return "_:" + value_;
    case Kind::Literal:
      break;
  }
  std::string out = "\"" + escapeString(value_) + "\"";
  if (!language_.empty()) return out + "@" + language_;
  if (datatype_ != vocab::kXsdString) out += "^^<" + datatype_ + ">";
  return out;
}

// _____________________________________________________________________________
Triple Triple::make(Term s, Term p, Term o) {
  if (s.isLiteral()) {
    throw InvalidTermError("literal in subject position: " + s.toNTriples());
  }
  if (!p.isIri()) {
    throw InvalidTermError("predicate must be an IRI: " + p.toNTriples());
  }
  return Triple{std::move(s), std::move(p), std::move(o)};
}

// _____________________________________________________________________________
std::string Triple::toNTriples() const {
  return subject.toNTriples() + " " + predicate.toNTriples() + " " +
         object.toNTriples() + " .";
}

std::ostream& operator<<(std::ostream& os, const Term& term) {
  return os << term.toNTriples();
}

std::ostream& operator<<(std::ostream& os, const Triple& triple) {
  return os << triple.toNTriples();
}

}  // namespace gridkg::rdf
