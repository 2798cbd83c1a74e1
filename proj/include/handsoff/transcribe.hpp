#pragma once

#include "handsoff/lp.hpp"
#include "handsoff/matfun.hpp"
#include "handsoff/model.hpp"

#include <cstddef>

namespace handsoff {

inline constexpr std::size_t kDefaultCells = 1000;

/// Zero-order-hold slice of the admissible set:
///   { u : columns * u = rhs, -1 <= u_k <= 1 },  rhs = -xi.
struct TranscribedProblem {
  Grid grid;
  Matrix columns;  // n x N, column k = cell_input_column(k)
  Vector rhs;
};

/// Requires cells >= max(n, 2).
[[nodiscard]] TranscribedProblem transcribe(const ValidatedSystem& sys, const Vector& xi,
                                            std::size_t cells = kDefaultCells);

/// Same columns, different initial state.
[[nodiscard]] TranscribedProblem retarget(const TranscribedProblem& base, const Vector& xi);

/// Minimum-L1 LP lift. Variables are interleaved as (p_0, q_0, p_1, q_1, ...)
/// with u_k = p_k - q_k, p_k, q_k in [0, 1] and cost h (p_k + q_k). The
/// interleaving makes the pivot sequence for -xi the exact mirror of xi.
[[nodiscard]] LpProblem l1_program(const TranscribedProblem& problem);

/// l1_program plus the budget row h * sum (p_k + q_k) + s = alpha, s in
/// [0, alpha], with zero cost: feasible iff some admissible u has
/// ||u||_1 <= alpha.
[[nodiscard]] LpProblem budget_program(const TranscribedProblem& problem, double alpha);

/// u_k = p_k - q_k from an LP solution of l1_program or budget_program.
[[nodiscard]] ControlSignal control_from_split(const Grid& grid, const Vector& x);

}  // namespace handsoff
