#include "markov_fuzzy/error.hpp"

namespace markov_fuzzy {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::ArityTooLarge: return "ArityTooLarge";
    case ErrorCode::BadCoordinate: return "BadCoordinate";
    case ErrorCode::InfeasibleQ: return "InfeasibleQ";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::DuplicateVariable: return "DuplicateVariable";
    case ErrorCode::UnexpandedQuantifier: return "UnexpandedQuantifier";
    case ErrorCode::InvalidQuantifier: return "InvalidQuantifier";
    case ErrorCode::MultiOutput: return "MultiOutput";
    case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::EmptyUniverse: return "EmptyUniverse";
    case ErrorCode::MarginalMismatch: return "MarginalMismatch";
    case ErrorCode::UnsupportedLiftPolicy: return "UnsupportedLiftPolicy";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Cancelled: return "Cancelled";
  }
  return "Unknown";
}

}  // namespace markov_fuzzy
