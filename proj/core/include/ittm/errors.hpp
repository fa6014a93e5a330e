#pragma once

#include <stdexcept>
#include <string>

namespace ittm {

// Every diagnostic the library raises carries one of these tags so callers
// (and the CLI exit-code table) can dispatch without string matching.
enum class ErrorKind {
  InvalidPosition,        // cell index 0 on a 1-indexed tape
  ReadOnlyStream,         // write to a query-form stream
  UndecidableComparison,  // shift equality asked of a query-form stream
  Parse,                  // malformed DSL / ordinal / stream-spec text
  UnknownState,           // rule references an undeclared state
  MissingDeclaration,     // program lacks start/limit/halt
  RuleFromHalt,           // rule fires from the halt state
  TargetsLimit,           // instruction names the limit state as successor
  NoSuccessor,            // successors() asked of a halted snapshot
  InvalidChecker,         // guess-and-check composer given a branching checker
  MalformedCode,          // decode input is not a valid code
  NotEncodable,           // snapshot/stream outside the encodable domain
  Range,                  // arithmetic overflow (pair positions, ordinals)
  TreeTooLarge,           // computation tree exceeded the node cap
  Usage,                  // bad CLI invocation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse errors additionally carry a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column,
             ErrorKind kind = ErrorKind::Parse)
      : Error(kind, msg + " (line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace ittm
