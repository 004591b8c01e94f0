#include "kwassign/error.hpp"

#include <sstream>

namespace kwassign {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::invalid_cell: return "invalid contingency cell";
    case Errc::empty_document: return "empty document";
    case Errc::empty_corpus: return "empty corpus";
    case Errc::unknown_id: return "unknown descriptor";
    case Errc::unknown_language: return "unknown language";
    case Errc::parse: return "parse error";
    case Errc::validation: return "validation error";
    case Errc::version_mismatch: return "version mismatch";
    case Errc::io: return "i/o error";
  }
  return "error";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

ParseError::ParseError(std::string file, std::size_t line,
                       const std::string& message)
    : Error(Errc::parse, file + ":" + std::to_string(line) + ": " + message),
      file_(std::move(file)),
      line_(line) {}

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::ostringstream os;
  os << issues.size() << " validation issue" << (issues.size() == 1 ? "" : "s");
  for (const auto& issue : issues) os << "\n  " << issue;
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : Error(Errc::validation, join_issues(issues)), issues_(std::move(issues)) {}

}  // namespace kwassign
