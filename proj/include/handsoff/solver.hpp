#pragma once

#include "handsoff/lp.hpp"
#include "handsoff/matfun.hpp"
#include "handsoff/model.hpp"
#include "handsoff/transcribe.hpp"

#include <cstddef>
#include <utility>

namespace handsoff {

enum class CellClass { Zero, Plus, Minus, Fractional };

/// Cells with |u| <= eps_zero are off, cells with |u| >= 1 - kBangTolerance
/// are at full effort, anything between is fractional.
inline constexpr double kBangTolerance = 1e-6;

[[nodiscard]] CellClass classify_cell(double u, ZeroTolerance tol = {});

struct CellCounts {
  std::size_t zero = 0;
  std::size_t plus = 0;
  std::size_t minus = 0;
  std::size_t fractional = 0;
};

struct SolveReport {
  SolveReport(Vector initial, ControlSignal u) : xi(std::move(initial)), control(std::move(u)) {}

  Vector xi;
  ControlSignal control;
  double value = 0.0;  // V(xi), the L1 objective
  double l1 = 0.0;
  double l0 = 0.0;
  double linf = 0.0;
  Vector terminal_residual;
  LpStatus status = LpStatus::Optimal;
  CellCounts cells;
  double bang_off_bang_fraction = 0.0;
  double max_split_product = 0.0;  // max_k p_k q_k, zero at an optimal vertex
  std::size_t lp_iterations = 0;
};

struct SolverOptions {
  ZeroTolerance zero_tol{};
  LpOptions lp{};
};

/// Maximum hands-off control for one plant on one grid. The transcription
/// columns and the ZOH propagator are computed once and shared by every
/// query, so a solver is the unit to reuse across many initial states.
/// Queries are const and safe to run concurrently.
class HandsOffSolver {
 public:
  HandsOffSolver(const ValidatedSystem& sys, std::size_t cells = kDefaultCells,
                 SolverOptions options = {});

  [[nodiscard]] const ValidatedSystem& system() const noexcept { return sys_; }
  [[nodiscard]] const Grid& grid() const noexcept { return base_.grid; }
  [[nodiscard]] const TranscribedProblem& transcription() const noexcept { return base_; }
  [[nodiscard]] const SolverOptions& options() const noexcept { return options_; }

  /// Throws InfeasibleError when xi is outside the discretized reachable set.
  [[nodiscard]] SolveReport solve(const Vector& xi) const;

  [[nodiscard]] double value(const Vector& xi) const { return solve(xi).value; }

  /// Membership in the discretized reachable set (phase 1 only).
  [[nodiscard]] bool feasible(const Vector& xi) const;

  /// Membership in R_alpha: some admissible u has ||u||_1 <= alpha.
  [[nodiscard]] bool feasible_with_budget(const Vector& xi, double alpha) const;

  /// x(T) from xi under exact ZOH propagation of `control`.
  [[nodiscard]] Vector simulate(const Vector& xi, const ControlSignal& control) const;

 private:
  ValidatedSystem sys_;
  SolverOptions options_;
  TranscribedProblem base_;
  ZohStep step_;
};

[[nodiscard]] SolveReport solve_hands_off(const ValidatedSystem& sys, const Vector& xi,
                                          std::size_t cells = kDefaultCells);

[[nodiscard]] double value(const ValidatedSystem& sys, const Vector& xi,
                           std::size_t cells = kDefaultCells);

[[nodiscard]] bool feasible_with_budget(const ValidatedSystem& sys, const Vector& xi,
                                        std::size_t cells, double alpha);

/// Re-simulates report.control from report.xi; a correct solve ends near 0.
[[nodiscard]] Vector verify_terminal(const ValidatedSystem& sys, const SolveReport& report);

/// Tolerance on ||x(T)||_inf for an accepted solve.
[[nodiscard]] double terminal_tolerance(const Vector& xi);

}  // namespace handsoff
