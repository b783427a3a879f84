#include "gridkg/query/Query.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "gridkg/rdf/Lexer.h"
#include "gridkg/rdf/Vocab.h"
#include "gridkg/util/Numbers.h"
#include "gridkg/util/Time.h"

namespace gridkg::query {

using rdf::Lexer;
using rdf::Term;
using rdf::Token;
using rdf::TokenKind;

namespace {

bool isKeyword(const Token& t, std::string_view keyword) {
  if (t.kind != TokenKind::Name || t.text.size() != keyword.size()) return false;
  for (std::size_t i = 0; i < keyword.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(t.text[i])) != keyword[i]) {
      return false;
    }
  }
  return true;
}

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : lexer_(text, /*queryMode=*/true) {
    query_.prefixes = rdf::standardPrefixes();
  }

  SelectQuery parse() {
    while (isKeyword(lexer_.peek(), "PREFIX")) prefixDecl();
    Token select = lexer_.next();
    if (!isKeyword(select, "SELECT")) failAt(select, "expected SELECT");
    bool selectAll = false;
    std::vector<Token> projected;
    if (peekPunct('*')) {
      lexer_.next();
      selectAll = true;
    } else {
      while (lexer_.peek().kind == TokenKind::Variable) projected.push_back(lexer_.next());
      if (projected.empty()) failAt(lexer_.peek(), "expected variables or '*'");
    }
    if (isKeyword(lexer_.peek(), "WHERE")) lexer_.next();
    groupGraphPattern();
    if (isKeyword(lexer_.peek(), "ORDER")) orderClause();
    if (isKeyword(lexer_.peek(), "LIMIT")) {
      lexer_.next();
      Token n = lexer_.next();
      if (n.kind != TokenKind::Integer) failAt(n, "expected LIMIT count");
      auto count = parseInteger(n.text);
      if (!count || *count < 0) failAt(n, "invalid LIMIT count");
      query_.limit = static_cast<std::size_t>(*count);
    }
    if (lexer_.peek().kind != TokenKind::End) failAt(lexer_.peek(), "unexpected token");

    auto bound = query_.patternVariables();
    std::set<std::string> boundSet(bound.begin(), bound.end());
    if (selectAll) {
      query_.projection = bound;
    } else {
      for (const auto& v : projected) {
        requireBound(boundSet, v, "projected");
        query_.projection.push_back(v.text);
      }
    }
    for (const auto& [token, role] : laterVariables_) requireBound(boundSet, token, role);
    return std::move(query_);
  }

 private:
  [[noreturn]] void failAt(const Token& token, const std::string& message) {
    throw ParseError(message, token.line, token.column,
                     token.kind == TokenKind::End ? "<end of input>" : token.raw);
  }

  void requireBound(const std::set<std::string>& bound, const Token& v,
                    const std::string& role) {
    if (!bound.contains(v.text)) {
      failAt(v, role + " variable ?" + v.text + " does not occur in the graph pattern");
    }
  }

  bool peekPunct(char c) {
    const Token& t = lexer_.peek();
    return t.kind == TokenKind::Punct && t.text[0] == c;
  }

  void expectPunct(char c) {
    Token t = lexer_.next();
    if (t.kind != TokenKind::Punct || t.text[0] != c) {
      failAt(t, std::string("expected '") + c + "'");
    }
  }

  void prefixDecl() {
    lexer_.next();
    Token name = lexer_.next();
    if (name.kind != TokenKind::PrefixedName || !name.local.empty()) {
      failAt(name, "expected prefix label");
    }
    Token iri = lexer_.next();
    if (iri.kind != TokenKind::IriRef) failAt(iri, "expected namespace IRI");
    query_.prefixes.set(name.text, iri.text);
  }

  void groupGraphPattern() {
    expectPunct('{');
    while (!peekPunct('}')) {
      if (isKeyword(lexer_.peek(), "FILTER")) {
        filter();
        if (peekPunct('.')) lexer_.next();
        continue;
      }
      triplesBlock();
      if (peekPunct('.')) {
        lexer_.next();
      } else if (!peekPunct('}') && !isKeyword(lexer_.peek(), "FILTER")) {
        failAt(lexer_.peek(), "expected '.' or '}'");
      }
    }
    expectPunct('}');
  }

  void triplesBlock() {
    PatternTerm subject = patternTerm(/*allowLiteral=*/false, "subject");
    while (true) {
      PatternTerm predicate = verb();
      while (true) {
        PatternTerm object = patternTerm(/*allowLiteral=*/true, "object");
        query_.patterns.push_back({subject, predicate, std::move(object)});
        if (!peekPunct(',')) break;
        lexer_.next();
      }
      if (!peekPunct(';')) return;
      while (peekPunct(';')) lexer_.next();
      if (peekPunct('.') || peekPunct('}')) return;
    }
  }

  PatternTerm verb() {
    const Token& t = lexer_.peek();
    if (t.kind == TokenKind::Name && t.text == "a") {
      lexer_.next();
      return Term::iri(std::string(vocab::kRdfType));
    }
    if (t.kind == TokenKind::Variable || t.kind == TokenKind::IriRef ||
        t.kind == TokenKind::PrefixedName) {
      return patternTerm(/*allowLiteral=*/false, "predicate");
    }
    failAt(t, "expected predicate");
  }

  Term iri() {
    Token t = lexer_.next();
    if (t.kind == TokenKind::IriRef) {
      if (!rdf::isAbsoluteIri(t.text)) failAt(t, "relative IRI in query");
      return Term::iri(t.text);
    }
    if (t.kind == TokenKind::PrefixedName) {
      auto ns = query_.prefixes.namespaceOf(t.text);
      if (!ns) throw UnknownPrefixError(t.text);
      return Term::iri(*ns + t.local);
    }
    failAt(t, "expected IRI");
  }

  PatternTerm patternTerm(bool allowLiteral, const std::string& role) {
    const Token& t = lexer_.peek();
    switch (t.kind) {
      case TokenKind::Variable:
        return Variable{lexer_.next().text};
      case TokenKind::IriRef:
      case TokenKind::PrefixedName:
        return iri();
      case TokenKind::String:
      case TokenKind::Integer:
      case TokenKind::Decimal:
      case TokenKind::Double:
        if (allowLiteral) return literal();
        break;
      case TokenKind::Name:
        if (allowLiteral && (t.text == "true" || t.text == "false")) {
          return Term::literal(lexer_.next().text, std::string(vocab::kXsdBoolean));
        }
        break;
      default:
        break;
    }
    failAt(t, "expected " + role);
  }

  Term literal() {
    Token s = lexer_.next();
    switch (s.kind) {
      case TokenKind::Integer:
        return Term::literal(s.text, std::string(vocab::kXsdInteger));
      case TokenKind::Decimal:
        return Term::literal(s.text, std::string(vocab::kXsdDecimal));
      case TokenKind::Double:
        return Term::literal(s.text, std::string(vocab::kXsdDouble));
      default:
        break;
    }
    const Token& t = lexer_.peek();
    if (t.kind == TokenKind::LangTag) {
      return Term::langLiteral(std::move(s.text), lexer_.next().text);
    }
    if (t.kind == TokenKind::DoubleCaret) {
      lexer_.next();
      return Term::literal(std::move(s.text), iri().value());
    }
    return Term::literal(std::move(s.text));
  }

  PatternTerm filterOperand() {
    const Token& t = lexer_.peek();
    if (t.kind == TokenKind::Variable) {
      laterVariables_.emplace_back(t, "filter");
      return Variable{lexer_.next().text};
    }
    return patternTerm(/*allowLiteral=*/true, "filter operand");
  }

  void filter() {
    lexer_.next();
    expectPunct('(');
    Filter f;
    f.lhs = filterOperand();
    Token op = lexer_.next();
    if (op.kind != TokenKind::Operator) failAt(op, "expected comparison operator");
    static const std::pair<std::string_view, CompareOp> kOps[] = {
        {"=", CompareOp::Eq}, {"!=", CompareOp::Ne}, {"<", CompareOp::Lt},
        {"<=", CompareOp::Le}, {">", CompareOp::Gt}, {">=", CompareOp::Ge}};
    for (const auto& [text, value] : kOps) {
      if (op.text == text) f.op = value;
    }
    f.rhs = filterOperand();
    expectPunct(')');
    query_.filters.push_back(std::move(f));
  }

  void orderClause() {
    lexer_.next();
    Token by = lexer_.next();
    if (!isKeyword(by, "BY")) failAt(by, "expected BY");
    do {
      OrderKey key;
      const Token& t = lexer_.peek();
      if (isKeyword(t, "ASC") || isKeyword(t, "DESC")) {
        key.descending = isKeyword(lexer_.next(), "DESC");
        expectPunct('(');
        Token v = lexer_.next();
        if (v.kind != TokenKind::Variable) failAt(v, "expected variable");
        expectPunct(')');
        key.variable = v.text;
        laterVariables_.emplace_back(v, "ordering");
      } else if (t.kind == TokenKind::Variable) {
        Token v = lexer_.next();
        key.variable = v.text;
        laterVariables_.emplace_back(v, "ordering");
      } else {
        failAt(t, "expected ordering variable");
      }
      query_.orderBy.push_back(std::move(key));
    } while (lexer_.peek().kind == TokenKind::Variable ||
             isKeyword(lexer_.peek(), "ASC") || isKeyword(lexer_.peek(), "DESC"));
  }

  Lexer lexer_;
  SelectQuery query_;
  std::vector<std::pair<Token, std::string>> laterVariables_;
};

bool isNumericType(std::string_view datatype) {
  static constexpr std::string_view kTypes[] = {
      "integer", "decimal", "double", "float", "int", "long", "short",
      "byte", "nonNegativeInteger", "positiveInteger", "unsignedInt"};
  if (datatype.substr(0, vocab::kXsd.size()) != vocab::kXsd) return false;
  auto local = datatype.substr(vocab::kXsd.size());
  return std::find(std::begin(kTypes), std::end(kTypes), local) != std::end(kTypes);
}

std::optional<double> numericValue(const Term& t) {
  if (!t.isLiteral() || !isNumericType(t.datatype())) return std::nullopt;
  return parseDouble(t.value());
}

std::optional<Timestamp> dateTimeValue(const Term& t) {
  if (!t.isLiteral() || t.datatype() != vocab::kXsdDateTime) return std::nullopt;
  return parseTimestamp(t.value());
}

bool isPlainString(const Term& t) {
  return t.isLiteral() && (t.datatype() == vocab::kXsdString || !t.language().empty());
}

template <typename T>
bool applyOp(const T& a, CompareOp op, const T& b) {
  switch (op) {
    case CompareOp::Eq:
      return a == b;
    case CompareOp::Ne:
      return a != b;
    case CompareOp::Lt:
      return a < b;
    case CompareOp::Le:
      return a <= b;
    case CompareOp::Gt:
      return a > b;
    case CompareOp::Ge:
      return a >= b;
  }
  return false;
}

}  // namespace

// _____________________________________________________________________________
std::string_view toString(CompareOp op) {
  switch (op) {
    case CompareOp::Eq:
      return "=";
    case CompareOp::Ne:
      return "!=";
    case CompareOp::Lt:
      return "<";
    case CompareOp::Le:
      return "<=";
    case CompareOp::Gt:
      return ">";
    case CompareOp::Ge:
      return ">=";
  }
  return "=";
}

// _____________________________________________________________________________
CompareOp negate(CompareOp op) {
  switch (op) {
    case CompareOp::Eq:
      return CompareOp::Ne;
    case CompareOp::Ne:
      return CompareOp::Eq;
    case CompareOp::Lt:
      return CompareOp::Ge;
    case CompareOp::Le:
      return CompareOp::Gt;
    case CompareOp::Gt:
      return CompareOp::Le;
    case CompareOp::Ge:
      return CompareOp::Lt;
  }
  return op;
}

// _____________________________________________________________________________
CompareOp mirror(CompareOp op) {
  switch (op) {
    case CompareOp::Lt:
      return CompareOp::Gt;
    case CompareOp::Le:
      return CompareOp::Ge;
    case CompareOp::Gt:
      return CompareOp::Lt;
    case CompareOp::Ge:
      return CompareOp::Le;
    default:
      return op;
  }
}

// _____________________________________________________________________________
std::vector<std::string> SelectQuery::patternVariables() const {
  std::vector<std::string> out;
  auto add = [&out](const PatternTerm& t) {
    if (const auto* v = std::get_if<Variable>(&t)) {
      if (std::find(out.begin(), out.end(), v->name) == out.end()) {
        out.push_back(v->name);
      }
    }
  };
  for (const auto& p : patterns) {
    add(p.subject);
    add(p.predicate);
    add(p.object);
  }
  return out;
}

// _____________________________________________________________________________
SelectQuery parseQuery(std::string_view text) { return QueryParser(text).parse(); }

// _____________________________________________________________________________
std::optional<bool> compareTerms(const Term& a, CompareOp op, const Term& b) {
  if (auto x = numericValue(a)) {
    if (auto y = numericValue(b)) return applyOp(*x, op, *y);
  }
  if (auto x = dateTimeValue(a)) {
    if (auto y = dateTimeValue(b)) return applyOp(*x, op, *y);
  }
  if (op == CompareOp::Eq || op == CompareOp::Ne) return applyOp(a, op, b);
  if (isPlainString(a) && isPlainString(b) && a.language() == b.language()) {
    return applyOp(a.value(), op, b.value());
  }
  return std::nullopt;
}

// _____________________________________________________________________________
int orderTerms(const Term& a, const Term& b) {
  auto x = numericValue(a);
  auto y = numericValue(b);
  if (x && y && *x != *y) return *x < *y ? -1 : 1;
  auto s = dateTimeValue(a);
  auto t = dateTimeValue(b);
  if (s && t && *s != *t) return *s < *t ? -1 : 1;
  int c = a.toNTriples().compare(b.toNTriples());
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

// _____________________________________________________________________________
void orderAndLimit(const SelectQuery& query, const std::vector<std::string>& columns,
                   std::vector<std::vector<Term>>& rows) {
  if (!query.orderBy.empty()) {
    std::vector<std::pair<std::size_t, bool>> keys;
    for (const auto& key : query.orderBy) {
      auto it = std::find(columns.begin(), columns.end(), key.variable);
      keys.emplace_back(static_cast<std::size_t>(it - columns.begin()), key.descending);
    }
    std::stable_sort(rows.begin(), rows.end(), [&keys](const auto& a, const auto& b) {
      for (const auto& [column, descending] : keys) {
        int c = orderTerms(a[column], b[column]);
        if (c != 0) return descending ? c > 0 : c < 0;
      }
      for (std::size_t i = 0; i < a.size(); ++i) {
        int c = orderTerms(a[i], b[i]);
        if (c != 0) return c < 0;
      }
      return false;
    });
  }
  if (query.limit && rows.size() > *query.limit) rows.resize(*query.limit);
}

}  // namespace gridkg::query
