#include "handsoff/transcribe.hpp"

#include "handsoff/error.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace handsoff {

TranscribedProblem transcribe(const ValidatedSystem& sys, const Vector& xi, std::size_t cells) {
  const auto n = static_cast<std::size_t>(sys.dim());
  if (cells < std::max<std::size_t>(n, 2)) {
    throw Error(ErrorCode::BadInput, "need at least max(n, 2) cells, got " + std::to_string(cells));
  }
  if (xi.size() != sys.dim() || !xi.allFinite()) {
    throw Error(ErrorCode::BadInput, "initial state must be a finite " + std::to_string(n) + "-vector");
  }
  Grid grid(sys.horizon(), cells);
  Matrix columns(sys.dim(), static_cast<Eigen::Index>(cells));
  for (std::size_t k = 0; k < cells; ++k) {
    columns.col(static_cast<Eigen::Index>(k)) = cell_input_column(sys.system(), grid, k);
  }
  return {grid, std::move(columns), -xi};
}

TranscribedProblem retarget(const TranscribedProblem& base, const Vector& xi) {
  if (xi.size() != base.columns.rows() || !xi.allFinite()) {
    throw Error(ErrorCode::BadInput, "initial state has the wrong dimension");
  }
  return {base.grid, base.columns, -xi};
}

LpProblem l1_program(const TranscribedProblem& problem) {
  const Eigen::Index n = problem.columns.rows();
  const Eigen::Index cells = problem.columns.cols();
  LpProblem lp;
  lp.constraints.resize(n, 2 * cells);
  for (Eigen::Index k = 0; k < cells; ++k) {
    lp.constraints.col(2 * k) = problem.columns.col(k);
    lp.constraints.col(2 * k + 1) = -problem.columns.col(k);
  }
  lp.rhs = problem.rhs;
  lp.cost = Vector::Constant(2 * cells, problem.grid.width());
  lp.lower = Vector::Zero(2 * cells);
  lp.upper = Vector::Ones(2 * cells);
  return lp;
}

LpProblem budget_program(const TranscribedProblem& problem, double alpha) {
  if (!(alpha >= 0.0)) {
    throw Error(ErrorCode::BadInput, "budget must be non-negative");
  }
  const LpProblem base = l1_program(problem);
  const Eigen::Index n = base.constraints.rows();
  const Eigen::Index vars = base.constraints.cols();

  LpProblem lp;
  lp.constraints = Matrix::Zero(n + 1, vars + 1);
  lp.constraints.topLeftCorner(n, vars) = base.constraints;
  lp.constraints.row(n).head(vars).setConstant(problem.grid.width());
  lp.constraints(n, vars) = 1.0;
  lp.rhs.resize(n + 1);
  lp.rhs << base.rhs, alpha;
  lp.cost = Vector::Zero(vars + 1);
  lp.lower = Vector::Zero(vars + 1);
  lp.upper.resize(vars + 1);
  lp.upper << base.upper, alpha;
  return lp;
}

ControlSignal control_from_split(const Grid& grid, const Vector& x) {
  std::vector<double> u(grid.cells());
  for (std::size_t k = 0; k < u.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(2 * k);
    u[k] = x(i) - x(i + 1);
  }
  return ControlSignal(grid, std::move(u));
}

}  // namespace handsoff
