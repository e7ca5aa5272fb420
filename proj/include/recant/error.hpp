#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace recant {

// Structural misuse of the graph API: unknown vertex, cycle, duplicate edge.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A path bundle that is not proper or not edge-consistent.
class BundleError : public std::runtime_error {
 public:
  enum class Kind { NotProper, EdgeInconsistent, Duplicate, Overlap };
  BundleError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Text input that does not conform to one of the file grammars.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string code, std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(code + " at " + std::to_string(line) + ":" + std::to_string(column) +
                           ": " + message),
        code_(std::move(code)),
        line_(line),
        column_(column) {}
  const std::string& code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string code_;
  std::size_t line_;
  std::size_t column_;
};

// A conditional probability whose conditioning event has probability zero
// and is not absorbed by a zero factor.
class PositivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Model or table problems that are not parse errors (domain mismatch, blow-up guard).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace recant
