#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace gridkg::rdf {

// Token stream shared by the Turtle and query parsers.
enum class TokenKind {
  End,
  IriRef,        // text = IRI without angle brackets
  PrefixedName,  // text = prefix label, local = local part (unescaped)
  BlankLabel,    // text = label without "_:"
  String,        // text = unescaped content
  LangTag,       // text = tag without '@'
  AtKeyword,     // text = "prefix" / "base"
  DoubleCaret,   // ^^
  Integer,
  Decimal,
  Double,
  Name,      // bare word: a, true, false, PREFIX, SELECT, ...
  Variable,  // text = name without '?' / '$'
  Punct,     // text = one of . ; , [ ] { } ( ) *
  Operator,  // text = one of = != < <= > >=
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::string local;
  std::size_t line = 1;
  std::size_t column = 1;
  // Raw source slice, for error messages.
  std::string raw;
};

class Lexer {
 public:
  // In query mode '?x'/'$x' are variables and comparison operators are
  // recognized; a '<' is an IRI only if a '>' closes it before whitespace.
  Lexer(std::string_view text, bool queryMode);

  const Token& peek();
  Token next();
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Token lex();
  void skipSpaceAndComments();
  char current() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char at(std::size_t offset) const {
    return pos_ + offset < text_.size() ? text_[pos_ + offset] : '\0';
  }
  void advance(std::size_t n = 1);
  [[noreturn]] void fail(const std::string& message, std::size_t line,
                         std::size_t column, std::string token) const;

  Token lexIri(std::size_t line, std::size_t column);
  Token lexString(std::size_t line, std::size_t column);
  Token lexNumber(std::size_t line, std::size_t column);
  Token lexName(std::size_t line, std::size_t column);
  std::string lexLocalName();
  void appendEscape(std::string& out);

  std::string_view text_;
  bool queryMode_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  bool hasPeeked_ = false;
  Token peeked_;
};

// Appends the UTF-8 encoding of a code point.
void appendUtf8(std::string& out, unsigned long codePoint);

}  // namespace gridkg::rdf
