#pragma once

#include "handsoff/model.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace handsoff {

/// min cost.x  s.t.  constraints * x = rhs,  lower <= x <= upper.
/// Every bound must be finite.
struct LpProblem {
  Vector cost;
  Matrix constraints;
  Vector rhs;
  Vector lower;
  Vector upper;
};

/// Solver tolerances. The defaults are the contract the rest of the library
/// relies on; change them only for experiments.
struct LpOptions {
  // Phase-1 optimum above feasibility_rel * (1 + ||rhs||_inf) means infeasible;
  // the same bound caps the constraint residual of an Optimal return.
  double feasibility_rel = 1e-8;
  double bound_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  std::size_t refactor_interval = 100;
  // Bland's rule takes over after this many degenerate pivots in a phase;
  // 0 selects 5 * (rows + columns).
  std::size_t bland_after = 0;
  // 0 selects 50 * (rows + columns) + 1000.
  std::size_t max_iterations = 0;
  // Stop after phase 1: status Optimal then only certifies feasibility.
  bool feasibility_only = false;
};

enum class LpStatus { Optimal, Infeasible, NumericFailure };

[[nodiscard]] constexpr std::string_view to_string(LpStatus s) noexcept {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::NumericFailure: return "numeric_failure";
  }
  return "unknown";
}

struct LpSolution {
  LpStatus status = LpStatus::NumericFailure;
  Vector x;
  double objective = 0.0;
  std::size_t iterations = 0;
  // Sum of artificial variables at the end of phase 1.
  double phase_one_residual = 0.0;
  bool used_bland = false;
  std::string detail;  // reason for NumericFailure
};

/// Dense bounded-variable primal simplex: phase 1 over artificial variables,
/// then phase 2 on the true costs. Dantzig pricing, Harris ratio test, and an
/// explicit basis inverse refactorized every `refactor_interval` pivots.
/// Deterministic for identical inputs.
[[nodiscard]] LpSolution solve_lp(const LpProblem& problem, const LpOptions& options = {});

}  // namespace handsoff
