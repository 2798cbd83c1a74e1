#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace handsoff {

enum class ErrorCode {
  Assumption,     // (A, B) uncontrollable or A singular
  Infeasible,     // initial state outside the (discretized) reachable set
  NumericFailure, // overflow, singular basis, lost accuracy
  OutOfReach,     // closed-form oracle queried outside [-x1, x1]
  BadInput,       // malformed arguments or files
};

[[nodiscard]] constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Assumption: return "E_ASSUMPTION";
    case ErrorCode::Infeasible: return "E_INFEASIBLE";
    case ErrorCode::NumericFailure: return "E_NUMERIC_FAILURE";
    case ErrorCode::OutOfReach: return "E_OUT_OF_REACH";
    case ErrorCode::BadInput: return "E_BAD_INPUT";
  }
  return "E_UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when the phase-1 problem cannot drive the constraint residual to
/// zero. `residual()` is the phase-1 optimum (sum of artificial values), which
/// lets callers tell "barely outside" from "far outside".
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& message, double residual)
      : Error(ErrorCode::Infeasible, message), residual_(residual) {}

  [[nodiscard]] double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace handsoff
