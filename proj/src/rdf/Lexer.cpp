#include "gridkg/rdf/Lexer.h"

#include <cctype>

#include "gridkg/util/Error.h"

namespace gridkg::rdf {

namespace {

bool isNameStart(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool isNameChar(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c >= 0x80;
}

bool isLocalEscapable(char c) {
  static constexpr std::string_view kChars = "_~.-!$&'()*+,;=/?#@%";
  return kChars.find(c) != std::string_view::npos;
}

int hexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

// _____________________________________________________________________________
void appendUtf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// _____________________________________________________________________________
Lexer::Lexer(std::string_view text, bool queryMode)
    : text_(text), queryMode_(queryMode) {
  // Skip a UTF-8 byte order mark.
  if (text_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
}

// _____________________________________________________________________________
const Token& Lexer::peek() {
  if (!hasPeeked_) {
    peeked_ = lex();
    hasPeeked_ = true;
  }
  return peeked_;
}

// _____________________________________________________________________________
Token Lexer::next() {
  if (hasPeeked_) {
    hasPeeked_ = false;
    return std::move(peeked_);
  }
  return lex();
}

// _____________________________________________________________________________
void Lexer::advance(std::size_t n) {
  for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++column_;
    }
    ++pos_;
  }
}

// _____________________________________________________________________________
void Lexer::fail(const std::string& message, std::size_t line,
                 std::size_t column, std::string token) const {
  throw ParseError(message, line, column, std::move(token));
}

// _____________________________________________________________________________
void Lexer::skipSpaceAndComments() {
  while (pos_ < text_.size()) {
    char c = current();
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      advance();
    } else if (c == '#') {
      while (pos_ < text_.size() && current() != '\n') advance();
    } else {
      break;
    }
  }
}

// _____________________________________________________________________________
Token Lexer::lex() {
  skipSpaceAndComments();
  std::size_t line = line_;
  std::size_t column = column_;
  std::size_t start = pos_;
  auto finish = [&](Token t) {
    t.line = line;
    t.column = column;
    t.raw = std::string(text_.substr(start, pos_ - start));
    return t;
  };
  if (pos_ >= text_.size()) return finish(Token{TokenKind::End});

  char c = current();
  if (c == '<') {
    if (queryMode_) {
      if (at(1) == '=') {
        advance(2);
        return finish(Token{TokenKind::Operator, "<="});
      }
      // An IRI closes with '>' before any whitespace.
      std::size_t i = pos_ + 1;
      while (i < text_.size() && text_[i] != '>' &&
             !std::isspace(static_cast<unsigned char>(text_[i]))) {
        ++i;
      }
      if (i >= text_.size() || text_[i] != '>') {
        advance();
        return finish(Token{TokenKind::Operator, "<"});
      }
    }
    return finish(lexIri(line, column));
  }
  if (queryMode_ && c == '>') {
    if (at(1) == '=') {
      advance(2);
      return finish(Token{TokenKind::Operator, ">="});
    }
    advance();
    return finish(Token{TokenKind::Operator, ">"});
  }
  if (queryMode_ && c == '=') {
    advance();
    return finish(Token{TokenKind::Operator, "="});
  }
  if (queryMode_ && c == '!' && at(1) == '=') {
    advance(2);
    return finish(Token{TokenKind::Operator, "!="});
  }
  if (c == '"' || c == '\'') return finish(lexString(line, column));
  if (c == '_' && at(1) == ':') {
    advance(2);
    std::string label;
    while (pos_ < text_.size()) {
      unsigned char d = current();
      if (isNameChar(d) || std::isdigit(d)) {
        label += static_cast<char>(d);
        advance();
      } else if (d == '.' && isNameChar(static_cast<unsigned char>(at(1)))) {
        label += '.';
        advance();
      } else {
        break;
      }
    }
    if (label.empty()) fail("empty blank node label", line, column, "_:");
    return finish(Token{TokenKind::BlankLabel, std::move(label)});
  }
  if (queryMode_ && (c == '?' || c == '$')) {
    advance();
    std::string name;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(current())) ||
            current() == '_' || static_cast<unsigned char>(current()) >= 0x80)) {
      name += current();
      advance();
    }
    if (name.empty()) fail("empty variable name", line, column, std::string(1, c));
    return finish(Token{TokenKind::Variable, std::move(name)});
  }
  if (c == '@') {
    advance();
    std::string tag;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(current())) ||
            (current() == '-' && !tag.empty()))) {
      tag += current();
      advance();
    }
    if (tag.empty() || !std::isalpha(static_cast<unsigned char>(tag[0]))) {
      fail("malformed language tag", line, column, "@" + tag);
    }
    if (tag == "prefix" || tag == "base") {
      return finish(Token{TokenKind::AtKeyword, std::move(tag)});
    }
    return finish(Token{TokenKind::LangTag, std::move(tag)});
  }
  if (c == '^') {
    if (at(1) != '^') fail("expected '^^'", line, column, "^");
    advance(2);
    return finish(Token{TokenKind::DoubleCaret, "^^"});
  }
  if (std::isdigit(static_cast<unsigned char>(c)) ||
      ((c == '+' || c == '-') &&
       (std::isdigit(static_cast<unsigned char>(at(1))) ||
        (at(1) == '.' && std::isdigit(static_cast<unsigned char>(at(2)))))) ||
      (c == '.' && std::isdigit(static_cast<unsigned char>(at(1))))) {
    return finish(lexNumber(line, column));
  }
  static constexpr std::string_view kPunct = ".;,[]{}()*";
  if (kPunct.find(c) != std::string_view::npos) {
    advance();
    return finish(Token{TokenKind::Punct, std::string(1, c)});
  }
  if (isNameStart(static_cast<unsigned char>(c)) || c == ':') {
    return finish(lexName(line, column));
  }
  fail("unexpected character", line, column, std::string(1, c));
}

// _____________________________________________________________________________
Token Lexer::lexIri(std::size_t line, std::size_t column) {
  advance();  // '<'
  std::string iri;
  while (true) {
    if (pos_ >= text_.size()) fail("unterminated IRI", line, column, "<" + iri);
    char c = current();
    if (c == '>') {
      advance();
      break;
    }
    if (c == '\\') {
      char kind = at(1);
      std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
      if (digits == 0) fail("invalid IRI escape", line_, column_, "\\");
      unsigned long cp = 0;
      for (std::size_t i = 0; i < digits; ++i) {
        int v = hexValue(at(2 + i));
        if (v < 0) fail("invalid IRI escape", line_, column_, "\\");
        cp = cp * 16 + static_cast<unsigned long>(v);
      }
      advance(2 + digits);
      appendUtf8(iri, cp);
      continue;
    }
    unsigned char u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' ||
        c == '|' || c == '^' || c == '`') {
      fail("invalid character in IRI", line_, column_, "<" + iri + c);
    }
    iri += c;
    advance();
  }
  return Token{TokenKind::IriRef, std::move(iri)};
}

// _____________________________________________________________________________
void Lexer::appendEscape(std::string& out) {
  std::size_t line = line_;
  std::size_t column = column_;
  char kind = at(1);
  switch (kind) {
    case 't':
      out += '\t';
      break;
    case 'b':
      out += '\b';
      break;
    case 'n':
      out += '\n';
      break;
    case 'r':
      out += '\r';
      break;
    case 'f':
      out += '\f';
      break;
    case '"':
    case '\'':
    case '\\':
      out += kind;
      break;
    case 'u':
    case 'U': {
      std::size_t digits = kind == 'u' ? 4 : 8;
      unsigned long cp = 0;
      for (std::size_t i = 0; i < digits; ++i) {
        int v = hexValue(at(2 + i));
        if (v < 0) fail("invalid unicode escape", line, column, "\\" + std::string(1, kind));
        cp = cp * 16 + static_cast<unsigned long>(v);
      }
      appendUtf8(out, cp);
      advance(2 + digits);
      return;
    }
    default:
      fail("invalid string escape", line, column, "\\" + std::string(1, kind));
  }
  advance(2);
}

// _____________________________________________________________________________
Token Lexer::lexString(std::size_t line, std::size_t column) {
  char quote = current();
  bool isLong = at(1) == quote && at(2) == quote;
  advance(isLong ? 3 : 1);
  std::string value;
  while (true) {
    if (pos_ >= text_.size()) {
      fail("unterminated string", line, column,
           std::string(1, quote) + value.substr(0, 20));
    }
    char c = current();
    if (c == '\\') {
      appendEscape(value);
      continue;
    }
    if (isLong) {
      if (c == quote && at(1) == quote && at(2) == quote) {
        // A long string may end with up to two extra quote characters.
        while (at(3) == quote) {
          value += quote;
          advance();
        }
        advance(3);
        break;
      }
    } else {
      if (c == quote) {
        advance();
        break;
      }
      if (c == '\n' || c == '\r') {
        fail("newline in short string", line, column,
             std::string(1, quote) + value.substr(0, 20));
      }
    }
    value += c;
    advance();
  }
  return Token{TokenKind::String, std::move(value)};
}

// _____________________________________________________________________________
Token Lexer::lexNumber(std::size_t, std::size_t) {
  std::string text;
  auto digits = [&] {
    while (std::isdigit(static_cast<unsigned char>(current()))) {
      text += current();
      advance();
    }
  };
  if (current() == '+' || current() == '-') {
    text += current();
    advance();
  }
  digits();
  TokenKind kind = TokenKind::Integer;
  if (current() == '.' && std::isdigit(static_cast<unsigned char>(at(1)))) {
    text += '.';
    advance();
    digits();
    kind = TokenKind::Decimal;
  }
  if ((current() == 'e' || current() == 'E') &&
      (std::isdigit(static_cast<unsigned char>(at(1))) ||
       ((at(1) == '+' || at(1) == '-') &&
        std::isdigit(static_cast<unsigned char>(at(2)))))) {
    text += current();
    advance();
    if (current() == '+' || current() == '-') {
      text += current();
      advance();
    }
    digits();
    kind = TokenKind::Double;
  }
  return Token{kind, std::move(text)};
}

// _____________________________________________________________________________
std::string Lexer::lexLocalName() {
  std::string local;
  while (pos_ < text_.size()) {
    unsigned char c = current();
    if (isNameChar(c) || std::isdigit(c) || c == ':') {
      local += static_cast<char>(c);
      advance();
    } else if (c == '%' && hexValue(at(1)) >= 0 && hexValue(at(2)) >= 0) {
      local += std::string(text_.substr(pos_, 3));
      advance(3);
    } else if (c == '\\' && isLocalEscapable(at(1))) {
      local += at(1);
      advance(2);
    } else if (c == '.') {
      // A dot is part of the name only if more name characters follow.
      unsigned char n = at(1);
      if (isNameChar(n) || std::isdigit(n) || n == ':' || n == '%' ||
          n == '\\') {
        local += '.';
        advance();
      } else {
        break;
      }
    } else {
      break;
    }
  }
  return local;
}

// _____________________________________________________________________________
Token Lexer::lexName(std::size_t line, std::size_t column) {
  std::string prefix;
  while (pos_ < text_.size()) {
    unsigned char c = current();
    if (isNameChar(c) || (!prefix.empty() && std::isdigit(c))) {
      prefix += static_cast<char>(c);
      advance();
    } else if (c == '.' && !prefix.empty() &&
               isNameChar(static_cast<unsigned char>(at(1)))) {
      prefix += '.';
      advance();
    } else {
      break;
    }
  }
  if (current() == ':') {
    advance();
    std::string local = lexLocalName();
    return Token{TokenKind::PrefixedName, std::move(prefix), std::move(local)};
  }
  if (prefix.empty()) fail("unexpected character", line, column, std::string(1, current()));
  return Token{TokenKind::Name, std::move(prefix)};
}

}  // namespace gridkg::rdf
