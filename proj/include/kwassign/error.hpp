#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kwassign {

enum class Errc {
  invalid_argument,
  invalid_cell,
  empty_document,
  empty_corpus,
  unknown_id,
  unknown_language,
  parse,
  validation,
  version_mismatch,
  io,
};

const char* to_string(Errc code);

// Base class of every error thrown by the library. The code identifies the
// failure class; what() carries a human-readable message with context.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Malformed input line. what() reads "<file>:<line>: <message>".
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& message);

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

// Structural check failure listing every violation found, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues);

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

using Warnings = std::vector<std::string>;

}  // namespace kwassign
