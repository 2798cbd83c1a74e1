#include "handsoff/solver.hpp"

#include "handsoff/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace handsoff {

CellClass classify_cell(double u, ZeroTolerance tol) {
  const double mag = std::abs(u);
  if (mag <= tol.value()) return CellClass::Zero;
  if (mag >= 1.0 - kBangTolerance) return u > 0.0 ? CellClass::Plus : CellClass::Minus;
  return CellClass::Fractional;
}

double terminal_tolerance(const Vector& xi) { return 1e-6 * (1.0 + xi.lpNorm<Eigen::Infinity>()); }

HandsOffSolver::HandsOffSolver(const ValidatedSystem& sys, std::size_t cells, SolverOptions options)
    : sys_(sys),
      options_(options),
      base_(transcribe(sys, Vector::Zero(sys.dim()), cells)),
      step_(zoh_discretize(sys.system(), base_.grid.width())) {}

SolveReport HandsOffSolver::solve(const Vector& xi) const {
  const TranscribedProblem problem = retarget(base_, xi);
  const LpSolution lp = solve_lp(l1_program(problem), options_.lp);
  if (lp.status == LpStatus::Infeasible) {
    throw InfeasibleError("initial state is outside the reachable set (phase-1 residual " +
                              std::to_string(lp.phase_one_residual) + ")",
                          lp.phase_one_residual);
  }
  if (lp.status != LpStatus::Optimal) {
    throw Error(ErrorCode::NumericFailure, "simplex failed to certify a solution: " + lp.detail);
  }

  SolveReport report(xi, control_from_split(grid(), lp.x));
  report.value = lp.objective;
  report.l1 = l1_norm(report.control);
  report.l0 = l0_norm(report.control, options_.zero_tol);
  report.linf = linf_norm(report.control);
  report.status = lp.status;
  report.lp_iterations = lp.iterations;

  for (std::size_t k = 0; k < report.control.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(2 * k);
    report.max_split_product = std::max(report.max_split_product, lp.x(i) * lp.x(i + 1));
    switch (classify_cell(report.control[k], options_.zero_tol)) {
      case CellClass::Zero: ++report.cells.zero; break;
      case CellClass::Plus: ++report.cells.plus; break;
      case CellClass::Minus: ++report.cells.minus; break;
      case CellClass::Fractional: ++report.cells.fractional; break;
    }
  }
  const auto total = static_cast<double>(report.control.size());
  report.bang_off_bang_fraction = (total - static_cast<double>(report.cells.fractional)) / total;
  report.terminal_residual = simulate(xi, report.control);
  return report;
}

bool HandsOffSolver::feasible(const Vector& xi) const {
  LpOptions opt = options_.lp;
  opt.feasibility_only = true;
  const LpSolution lp = solve_lp(l1_program(retarget(base_, xi)), opt);
  if (lp.status == LpStatus::NumericFailure) {
    throw Error(ErrorCode::NumericFailure, "simplex failed during feasibility check: " + lp.detail);
  }
  return lp.status == LpStatus::Optimal;
}

bool HandsOffSolver::feasible_with_budget(const Vector& xi, double alpha) const {
  LpOptions opt = options_.lp;
  opt.feasibility_only = true;
  const LpSolution lp = solve_lp(budget_program(retarget(base_, xi), alpha), opt);
  if (lp.status == LpStatus::NumericFailure) {
    throw Error(ErrorCode::NumericFailure, "simplex failed during budget feasibility check: " + lp.detail);
  }
  return lp.status == LpStatus::Optimal;
}

Vector HandsOffSolver::simulate(const Vector& xi, const ControlSignal& control) const {
  if (control.size() != grid().cells()) {
    throw Error(ErrorCode::BadInput, "control length does not match the grid");
  }
  Vector x = xi;
  for (double u : control.values()) {
    x = step_.state * x + step_.input * u;
  }
  return x;
}

SolveReport solve_hands_off(const ValidatedSystem& sys, const Vector& xi, std::size_t cells) {
  return HandsOffSolver(sys, cells).solve(xi);
}

double value(const ValidatedSystem& sys, const Vector& xi, std::size_t cells) {
  return solve_hands_off(sys, xi, cells).value;
}

bool feasible_with_budget(const ValidatedSystem& sys, const Vector& xi, std::size_t cells,
                          double alpha) {
  return HandsOffSolver(sys, cells).feasible_with_budget(xi, alpha);
}

Vector verify_terminal(const ValidatedSystem& sys, const SolveReport& report) {
  const Grid& grid = report.control.grid();
  const ZohStep step = zoh_discretize(sys.system(), grid.width());
  Vector x = report.xi;
  for (double u : report.control.values()) {
    x = step.state * x + step.input * u;
  }
  return x;
}

}  // namespace handsoff
