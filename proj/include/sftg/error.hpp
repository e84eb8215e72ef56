#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sftg {

enum class ErrorKind {
  InvalidName,
  Parse,
  MissingRule,
  UnknownGenerator,
  InapplicableStep,
  PreconditionViolated,
  GeneratorAbsentFromRelator,
  BudgetExceeded,
  ModelFailure,
  SmallCancellationViolated,
  SupportOutsideSubgroup,
  DuplicateSupportPoint,
  DecompositionFailure,
  AlphabetMismatch,
  PropagationContradiction,
  InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

// Every library failure is reported through this type (or a subclass carrying
// extra payload). The message is prefixed with the kind name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  // 1-based; zero when the position is unknown.
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  // The message without the position prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

class PropagationContradiction : public Error {
 public:
  PropagationContradiction(std::vector<std::size_t> path, const std::string& message);

  // Ball element indices from the seed cell to the conflicting cell.
  const std::vector<std::size_t>& path() const noexcept { return path_; }

 private:
  std::vector<std::size_t> path_;
};

}  // namespace sftg
