#pragma once

#include <stdexcept>
#include <string>

namespace gridkg {

// Base class of every error raised by the library. The CLI maps subclasses to
// exit codes, so new error kinds should derive from the most specific base.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (Turtle, query, JSON, CSV cell layout).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column,
             std::string token)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column) +
              (token.empty() ? std::string{} : " near '" + token + "'")),
        line_(line),
        column_(column),
        token_(std::move(token)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};

class UnknownPrefixError : public Error {
 public:
  explicit UnknownPrefixError(std::string prefix)
      : Error("unknown prefix '" + prefix + ":'"), prefix_(std::move(prefix)) {}
  const std::string& prefix() const { return prefix_; }

 private:
  std::string prefix_;
};

// Missing files, unreadable sources.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gridkg
