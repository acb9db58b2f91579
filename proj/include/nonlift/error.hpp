#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nonlift {

enum class ErrorCode {
  InvalidParameter,
  UnsupportedDimension,
  DegenerateSpan,
  NotAProjectivePoint,
  IndeterminateSpan,
  IndeterminateIntersection,
  UndecidableCollinearity,
  DegeneratePlane,
  MissingAssignment,
  BudgetExceeded,
  IncompleteTrace,
  InvalidBlowUp,
  Degenerate,
  UnsupportedQuery,
  Parse,
  Internal,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI, tests) can branch on the kind of failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nonlift
