#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace infodep {

enum class ErrorKind {
  // input problems
  InvalidArgument,
  ParseError,
  EmptyFile,
  RaggedRows,
  GridNotIncreasing,
  GridMismatch,
  LengthMismatch,
  UnknownColumn,
  MissingCodes,
  EmptyInput,
  EmptyGroup,
  // degenerate statistics
  DegenerateTarget,
  ZeroBaseline,
  InfiniteDeviance,
  // numerical failure
  RankDeficient,
  SingularDesign,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyFile: return "EmptyFile";
    case ErrorKind::RaggedRows: return "RaggedRows";
    case ErrorKind::GridNotIncreasing: return "GridNotIncreasing";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::UnknownColumn: return "UnknownColumn";
    case ErrorKind::MissingCodes: return "MissingCodes";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::EmptyGroup: return "EmptyGroup";
    case ErrorKind::DegenerateTarget: return "DegenerateTarget";
    case ErrorKind::ZeroBaseline: return "ZeroBaseline";
    case ErrorKind::InfiniteDeviance: return "InfiniteDeviance";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::SingularDesign: return "SingularDesign";
  }
  return "Unknown";
}

/// Process exit code for an error class: 2 = input, 3 = degenerate
/// statistics, 4 = numerical failure.
constexpr int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateTarget:
    case ErrorKind::ZeroBaseline:
    case ErrorKind::InfiniteDeviance:
      return 3;
    case ErrorKind::RankDeficient:
    case ErrorKind::SingularDesign:
      return 4;
    default:
      return 2;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace infodep
