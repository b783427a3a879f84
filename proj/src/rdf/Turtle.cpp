#include "gridkg/rdf/Turtle.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <tuple>

#include "gridkg/rdf/Lexer.h"
#include "gridkg/rdf/Vocab.h"

namespace gridkg::rdf {

namespace {

std::atomic<unsigned long> documentCounter{0};

bool equalsIgnoreCase(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

class TurtleParser {
 public:
  TurtleParser(std::string_view text, std::string_view base)
      : lexer_(text, /*queryMode=*/false),
        base_(base),
        scope_("d" + std::to_string(++documentCounter) + "_") {}

  TurtleDocument parseDocument() {
    while (lexer_.peek().kind != TokenKind::End) statement();
    return std::move(document_);
  }

  Term parseSingleTerm() {
    Term t = object();
    if (lexer_.peek().kind != TokenKind::End) {
      failAt(lexer_.peek(), "trailing input after term");
    }
    return t;
  }

  PrefixMap& prefixes() { return document_.prefixes; }

 private:
  [[noreturn]] void failAt(const Token& token, const std::string& message) {
    throw ParseError(message, token.line, token.column,
                     token.kind == TokenKind::End ? "<end of input>" : token.raw);
  }

  Token expectPunct(char c) {
    Token t = lexer_.next();
    if (t.kind != TokenKind::Punct || t.text[0] != c) {
      failAt(t, std::string("expected '") + c + "'");
    }
    return t;
  }

  bool peekPunct(char c) {
    const Token& t = lexer_.peek();
    return t.kind == TokenKind::Punct && t.text[0] == c;
  }

  std::string resolve(const Token& token) {
    const std::string& iri = token.text;
    if (isAbsoluteIri(iri)) return iri;
    if (base_.empty()) failAt(token, "relative IRI without base");
    return base_ + iri;
  }

  void statement() {
    const Token& t = lexer_.peek();
    if (t.kind == TokenKind::AtKeyword) {
      Token keyword = lexer_.next();
      directive(keyword.text);
      expectPunct('.');
      return;
    }
    if (t.kind == TokenKind::Name &&
        (equalsIgnoreCase(t.text, "prefix") || equalsIgnoreCase(t.text, "base"))) {
      Token keyword = lexer_.next();
      std::string lower = equalsIgnoreCase(keyword.text, "prefix") ? "prefix" : "base";
      directive(lower);
      return;
    }
    triples();
    expectPunct('.');
  }

  void directive(const std::string& keyword) {
    if (keyword == "prefix") {
      Token name = lexer_.next();
      if (name.kind != TokenKind::PrefixedName || !name.local.empty()) {
        failAt(name, "expected prefix label");
      }
      Token iri = lexer_.next();
      if (iri.kind != TokenKind::IriRef) failAt(iri, "expected namespace IRI");
      document_.prefixes.set(name.text, resolve(iri));
    } else {
      Token iri = lexer_.next();
      if (iri.kind != TokenKind::IriRef) failAt(iri, "expected base IRI");
      base_ = resolve(iri);
    }
  }

  void triples() {
    if (peekPunct('[')) {
      Term subject = blankNodePropertyList();
      // "[ p o ] ." is a complete statement on its own.
      if (!peekPunct('.')) predicateObjectList(subject);
      return;
    }
    Term s = subject();
    predicateObjectList(s);
  }

  Term subject() {
    const Token& t = lexer_.peek();
    switch (t.kind) {
      case TokenKind::IriRef:
      case TokenKind::PrefixedName:
        return iri();
      case TokenKind::BlankLabel: {
        Token b = lexer_.next();
        return Term::blank(scope_ + b.text);
      }
      case TokenKind::Punct:
        if (t.text == "(") failAt(t, "collections are not supported");
        break;
      default:
        break;
    }
    failAt(t, "expected subject");
  }

  Term iri() {
    Token t = lexer_.next();
    if (t.kind == TokenKind::IriRef) return Term::iri(resolve(t));
    if (t.kind == TokenKind::PrefixedName) {
      auto ns = document_.prefixes.namespaceOf(t.text);
      if (!ns) throw UnknownPrefixError(t.text);
      return Term::iri(*ns + t.local);
    }
    failAt(t, "expected IRI");
  }

  Term verb() {
    const Token& t = lexer_.peek();
    if (t.kind == TokenKind::Name && t.text == "a") {
      lexer_.next();
      return Term::iri(std::string(vocab::kRdfType));
    }
    if (t.kind == TokenKind::IriRef || t.kind == TokenKind::PrefixedName) {
      return iri();
    }
    failAt(t, "expected predicate");
  }

  void predicateObjectList(const Term& subject) {
    while (true) {
      Term predicate = verb();
      objectList(subject, predicate);
      if (!peekPunct(';')) return;
      // Any number of ';' may repeat, and a trailing ';' is allowed.
      while (peekPunct(';')) lexer_.next();
      const Token& t = lexer_.peek();
      if (t.kind == TokenKind::Punct && (t.text == "." || t.text == "]")) return;
    }
  }

  void objectList(const Term& subject, const Term& predicate) {
    while (true) {
      Term o = object();
      document_.triples.push_back(Triple::make(subject, predicate, std::move(o)));
      if (!peekPunct(',')) return;
      lexer_.next();
    }
  }

  Term blankNodePropertyList() {
    expectPunct('[');
    // "d<N>g<M>" never clashes with renamed user labels ("d<N>_<label>").
    Term node = Term::blank(scope_.substr(0, scope_.size() - 1) + "g" +
                            std::to_string(++anonymousCounter_));
    if (!peekPunct(']')) predicateObjectList(node);
    expectPunct(']');
    return node;
  }

  Term object() {
    const Token& t = lexer_.peek();
    switch (t.kind) {
      case TokenKind::IriRef:
      case TokenKind::PrefixedName:
        return iri();
      case TokenKind::BlankLabel: {
        Token b = lexer_.next();
        return Term::blank(scope_ + b.text);
      }
      case TokenKind::Punct:
        if (t.text == "[") return blankNodePropertyList();
        if (t.text == "(") failAt(t, "collections are not supported");
        break;
      case TokenKind::String:
        return literal();
      case TokenKind::Integer: {
        Token n = lexer_.next();
        return Term::literal(n.text, std::string(vocab::kXsdInteger));
      }
      case TokenKind::Decimal: {
        Token n = lexer_.next();
        return Term::literal(n.text, std::string(vocab::kXsdDecimal));
      }
      case TokenKind::Double: {
        Token n = lexer_.next();
        return Term::literal(n.text, std::string(vocab::kXsdDouble));
      }
      case TokenKind::Name:
        if (t.text == "true" || t.text == "false") {
          Token b = lexer_.next();
          return Term::literal(b.text, std::string(vocab::kXsdBoolean));
        }
        break;
      default:
        break;
    }
    failAt(t, "expected object");
  }

  Term literal() {
    Token s = lexer_.next();
    const Token& t = lexer_.peek();
    if (t.kind == TokenKind::LangTag) {
      Token tag = lexer_.next();
      return Term::langLiteral(std::move(s.text), std::move(tag.text));
    }
    if (t.kind == TokenKind::DoubleCaret) {
      lexer_.next();
      Term datatype = iri();
      return Term::literal(std::move(s.text), datatype.value());
    }
    return Term::literal(std::move(s.text));
  }

  Lexer lexer_;
  std::string base_;
  std::string scope_;
  unsigned long anonymousCounter_ = 0;
  TurtleDocument document_;
};

}  // namespace

// _____________________________________________________________________________
TurtleDocument parseTurtle(std::string_view text, std::string_view base) {
  return TurtleParser(text, base).parseDocument();
}

// _____________________________________________________________________________
Term parseTurtleTerm(std::string_view text, const PrefixMap& prefixes) {
  TurtleParser parser(text, {});
  parser.prefixes() = prefixes;
  return parser.parseSingleTerm();
}

// _____________________________________________________________________________
std::string renderTerm(const Term& term, const PrefixMap& prefixes) {
  auto renderIri = [&](const std::string& iri) {
    if (auto compacted = prefixes.compact(iri)) {
      return compacted->first + ":" + compacted->second;
    }
    return "<" + iri + ">";
  };
  switch (term.kind()) {
    case Term::Kind::Iri:
      return renderIri(term.value());
    case Term::Kind::Blank:
      return "_:" + term.value();
    case Term::Kind::Literal:
      break;
  }
  std::string out = "\"" + escapeString(term.value()) + "\"";
  if (!term.language().empty()) return out + "@" + term.language();
  if (term.datatype() != vocab::kXsdString) out += "^^" + renderIri(term.datatype());
  return out;
}

// _____________________________________________________________________________
std::string serializeTurtle(const std::vector<Triple>& triples,
                            const PrefixMap& prefixes) {
  std::string out;
  for (const auto& [label, ns] : prefixes) {
    out += "@prefix " + label + ": <" + ns + "> .\n";
  }

  using Rendered = std::tuple<std::string, std::string, std::string>;
  std::vector<Rendered> rows;
  rows.reserve(triples.size());
  for (const auto& t : triples) {
    std::string p = t.predicate.value() == vocab::kRdfType
                        ? std::string("a")
                        : renderTerm(t.predicate, prefixes);
    rows.emplace_back(renderTerm(t.subject, prefixes), std::move(p),
                      renderTerm(t.object, prefixes));
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  for (std::size_t i = 0; i < rows.size();) {
    const std::string& subject = std::get<0>(rows[i]);
    out += "\n" + subject;
    bool firstPredicate = true;
    while (i < rows.size() && std::get<0>(rows[i]) == subject) {
      const std::string& predicate = std::get<1>(rows[i]);
      out += firstPredicate ? " " : " ;\n    ";
      firstPredicate = false;
      out += predicate + " " + std::get<2>(rows[i]);
      ++i;
      while (i < rows.size() && std::get<0>(rows[i]) == subject &&
             std::get<1>(rows[i]) == predicate) {
        out += " ,\n        " + std::get<2>(rows[i]);
        ++i;
      }
    }
    out += " .\n";
  }
  return out;
}

}  // namespace gridkg::rdf
