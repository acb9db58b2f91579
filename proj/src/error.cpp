#include "nonlift/error.hpp"

namespace nonlift {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::UnsupportedDimension: return "unsupported-dimension";
    case ErrorCode::DegenerateSpan: return "degenerate-span";
    case ErrorCode::NotAProjectivePoint: return "not-a-projective-point";
    case ErrorCode::IndeterminateSpan: return "indeterminate-span";
    case ErrorCode::IndeterminateIntersection: return "indeterminate-intersection";
    case ErrorCode::UndecidableCollinearity: return "undecidable-by-determinant";
    case ErrorCode::DegeneratePlane: return "degenerate-plane";
    case ErrorCode::MissingAssignment: return "missing-assignment";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
    case ErrorCode::IncompleteTrace: return "incomplete-trace";
    case ErrorCode::InvalidBlowUp: return "invalid-blow-up";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::UnsupportedQuery: return "unsupported-query";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace nonlift
