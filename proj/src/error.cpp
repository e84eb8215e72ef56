#include "sftg/error.hpp"

#include <utility>

namespace sftg {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidName: return "InvalidName";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::MissingRule: return "MissingRule";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::InapplicableStep: return "InapplicableStep";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::GeneratorAbsentFromRelator: return "GeneratorAbsentFromRelator";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ModelFailure: return "ModelFailure";
    case ErrorKind::SmallCancellationViolated: return "SmallCancellationViolated";
    case ErrorKind::SupportOutsideSubgroup: return "SupportOutsideSubgroup";
    case ErrorKind::DuplicateSupportPoint: return "DuplicateSupportPoint";
    case ErrorKind::DecompositionFailure: return "DecompositionFailure";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::PropagationContradiction: return "PropagationContradiction";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

namespace {
std::string with_position(std::size_t line, std::size_t column, const std::string& message) {
  if (line == 0) return message;
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
}
}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorKind::Parse, with_position(line, column, message)), line_(line), column_(column), detail_(message) {}

PropagationContradiction::PropagationContradiction(std::vector<std::size_t> path,
                                                   const std::string& message)
    : Error(ErrorKind::PropagationContradiction, message), path_(std::move(path)) {}

}  // namespace sftg
