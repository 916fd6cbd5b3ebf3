#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace markov_fuzzy {

enum class ErrorCode {
  NegativeMass,
  NotNormalized,
  ArityTooLarge,
  BadCoordinate,
  InfeasibleQ,
  ArityMismatch,
  UnboundVariable,
  DuplicateVariable,
  UnexpandedQuantifier,
  InvalidQuantifier,
  MultiOutput,
  InfeasibleSpec,
  EmptyUniverse,
  MarginalMismatch,
  UnsupportedLiftPolicy,
  ParseError,
  SchemaError,
  InvalidArgument,
  Cancelled,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// Byte range [start, end) into a parsed input.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class ParseError : public Error {
public:
  ParseError(const std::string& message, SourceSpan span,
             std::vector<std::string> expected)
      : Error(ErrorCode::ParseError, message), span_(span),
        expected_(std::move(expected)) {}

  SourceSpan span() const noexcept { return span_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  SourceSpan span_;
  std::vector<std::string> expected_;
};

}  // namespace markov_fuzzy
