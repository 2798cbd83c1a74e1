#include "handsoff/lp.hpp"

#include "handsoff/error.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace handsoff {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegenerateStep = 1e-12;

class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundedSimplex {
 public:
  BoundedSimplex(const LpProblem& p, const LpOptions& opt)
      : opt_(opt),
        rows_(p.constraints.rows()),
        structural_(p.constraints.cols()),
        cols_(structural_ + rows_),
        a_(rows_, cols_),
        b_(p.rhs),
        lo_(cols_),
        hi_(cols_),
        x_(cols_),
        at_upper_(static_cast<std::size_t>(cols_), false),
        position_(static_cast<std::size_t>(cols_), -1),
        basis_(static_cast<std::size_t>(rows_)) {
    a_.leftCols(structural_) = p.constraints;
    a_.rightCols(rows_).setZero();
    lo_.head(structural_) = p.lower;
    hi_.head(structural_) = p.upper;
    lo_.tail(rows_).setZero();
    hi_.tail(rows_).setConstant(kInf);

    x_.head(structural_) = p.lower;
    const Vector residual = b_ - p.constraints * p.lower;
    binv_ = Matrix::Zero(rows_, rows_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index art = structural_ + i;
      const double sign = residual(i) >= 0.0 ? 1.0 : -1.0;
      a_(i, art) = sign;
      binv_(i, i) = sign;
      x_(art) = std::abs(residual(i));
      basis_[static_cast<std::size_t>(i)] = art;
      position_[static_cast<std::size_t>(art)] = i;
    }

    const auto size = static_cast<std::size_t>(rows_ + structural_);
    bland_after_ = opt.bland_after != 0 ? opt.bland_after : 5 * size;
    max_iterations_ = opt.max_iterations != 0 ? opt.max_iterations : 50 * size + 1000;
  }

  LpSolution run(const Vector& cost) {
    LpSolution out;

    Vector phase_one_cost = Vector::Zero(cols_);
    phase_one_cost.tail(rows_).setOnes();
    iterate(phase_one_cost);

    const double infeasibility = x_.tail(rows_).sum();
    out.phase_one_residual = infeasibility;
    const double tol = opt_.feasibility_rel * (1.0 + b_.lpNorm<Eigen::Infinity>());
    if (infeasibility > tol) {
      out.status = LpStatus::Infeasible;
      out.x = x_.head(structural_);
      out.iterations = iterations_;
      out.used_bland = used_bland_;
      return out;
    }

    retire_artificials();

    if (!opt_.feasibility_only) {
      Vector phase_two_cost = Vector::Zero(cols_);
      phase_two_cost.head(structural_) = cost;
      iterate(phase_two_cost);
    }

    refactor();
    out.x = x_.head(structural_);
    out.objective = cost.dot(out.x);
    out.iterations = iterations_;
    out.used_bland = used_bland_;
    out.status = certify(out.x, tol, out.detail) ? LpStatus::Optimal : LpStatus::NumericFailure;
    return out;
  }

 private:
  bool is_basic(Eigen::Index j) const { return position_[static_cast<std::size_t>(j)] >= 0; }

  bool is_fixed(Eigen::Index j) const { return hi_(j) - lo_(j) <= 0.0; }

  void refactor() {
    Matrix basis_cols(rows_, rows_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      basis_cols.col(i) = a_.col(basis_[static_cast<std::size_t>(i)]);
    }
    Eigen::FullPivLU<Matrix> lu(basis_cols);
    if (!lu.isInvertible()) {
      throw NumericFailure("basis matrix became singular");
    }
    binv_ = lu.inverse();

    Vector rhs = b_;
    for (Eigen::Index j = 0; j < cols_; ++j) {
      if (!is_basic(j) && x_(j) != 0.0) rhs -= a_.col(j) * x_(j);
    }
    const Vector xb = binv_ * rhs;
    for (Eigen::Index i = 0; i < rows_; ++i) x_(basis_[static_cast<std::size_t>(i)]) = xb(i);
    since_refactor_ = 0;
  }

  // Replace basis row r by column `entering` whose B^{-1} image is w.
  void pivot(Eigen::Index r, Eigen::Index entering, const Vector& w) {
    const double piv = w(r);
    binv_.row(r) /= piv;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (i != r && w(i) != 0.0) binv_.row(i) -= w(i) * binv_.row(r);
    }
    const Eigen::Index leaving = basis_[static_cast<std::size_t>(r)];
    position_[static_cast<std::size_t>(leaving)] = -1;
    basis_[static_cast<std::size_t>(r)] = entering;
    position_[static_cast<std::size_t>(entering)] = r;
    if (++since_refactor_ >= opt_.refactor_interval) refactor();
  }

  Eigen::Index price(const Vector& cost, bool bland) const {
    Vector cb(rows_);
    for (Eigen::Index i = 0; i < rows_; ++i) cb(i) = cost(basis_[static_cast<std::size_t>(i)]);
    const Vector y = binv_.transpose() * cb;
    const Vector reduced = cost - a_.transpose() * y;

    Eigen::Index best = -1;
    double best_violation = 0.0;
    for (Eigen::Index j = 0; j < cols_; ++j) {
      if (is_basic(j) || is_fixed(j)) continue;
      const double d = reduced(j);
      const bool upper = at_upper_[static_cast<std::size_t>(j)];
      const double violation = upper ? d : -d;
      if (violation <= opt_.optimality_tol) continue;
      if (bland) return j;
      if (violation > best_violation) {
        best_violation = violation;
        best = j;
      }
    }
    return best;
  }

  void iterate(const Vector& cost) {
    std::size_t degenerate = 0;
    bool bland = false;
    for (;;) {
      if (iterations_ >= max_iterations_) {
        throw NumericFailure("iteration limit reached");
      }
      const Eigen::Index entering = price(cost, bland);
      if (entering < 0) return;
      ++iterations_;

      const Vector w = binv_ * a_.col(entering);
      const double dir = at_upper_[static_cast<std::size_t>(entering)] ? -1.0 : 1.0;
      const double flip = hi_(entering) - lo_(entering);

      // Harris pass 1: largest step that keeps every basic variable within
      // its bound plus the primal tolerance.
      double theta_max = flip;
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const double alpha = dir * w(i);
        const Eigen::Index var = basis_[static_cast<std::size_t>(i)];
        if (alpha > opt_.pivot_tol) {
          theta_max = std::min(theta_max, (x_(var) - lo_(var) + opt_.bound_tol) / alpha);
        } else if (alpha < -opt_.pivot_tol && std::isfinite(hi_(var))) {
          theta_max = std::min(theta_max, (hi_(var) - x_(var) + opt_.bound_tol) / -alpha);
        }
      }

      // Pass 2: among rows blocking within theta_max take the largest pivot
      // (or, under Bland, the smallest variable index).
      Eigen::Index leave_row = -1;
      double leave_ratio = kInf;
      double leave_pivot = 0.0;
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const double alpha = dir * w(i);
        const Eigen::Index var = basis_[static_cast<std::size_t>(i)];
        double ratio = kInf;
        if (alpha > opt_.pivot_tol) {
          ratio = (x_(var) - lo_(var)) / alpha;
        } else if (alpha < -opt_.pivot_tol && std::isfinite(hi_(var))) {
          ratio = (hi_(var) - x_(var)) / -alpha;
        } else {
          continue;
        }
        if (ratio > theta_max) continue;
        bool take = false;
        if (leave_row < 0) {
          take = true;
        } else if (bland) {
          take = var < basis_[static_cast<std::size_t>(leave_row)];
        } else {
          take = std::abs(alpha) > leave_pivot;
        }
        if (take) {
          leave_row = i;
          leave_ratio = std::max(ratio, 0.0);
          leave_pivot = std::abs(alpha);
        }
      }

      if (leave_row < 0 || flip <= leave_ratio) {
        // Bound flip: the entering variable crosses to its other bound.
        if (!std::isfinite(flip)) throw NumericFailure("unbounded direction");
        x_(entering) = at_upper_[static_cast<std::size_t>(entering)] ? lo_(entering) : hi_(entering);
        at_upper_[static_cast<std::size_t>(entering)] = !at_upper_[static_cast<std::size_t>(entering)];
        for (Eigen::Index i = 0; i < rows_; ++i) {
          x_(basis_[static_cast<std::size_t>(i)]) -= dir * flip * w(i);
        }
        degenerate = 0;
        continue;
      }

      const double theta = leave_ratio;
      for (Eigen::Index i = 0; i < rows_; ++i) {
        x_(basis_[static_cast<std::size_t>(i)]) -= dir * theta * w(i);
      }
      x_(entering) += dir * theta;

      const Eigen::Index leaving = basis_[static_cast<std::size_t>(leave_row)];
      const bool to_lower = dir * w(leave_row) > 0.0;
      x_(leaving) = to_lower ? lo_(leaving) : hi_(leaving);
      at_upper_[static_cast<std::size_t>(leaving)] = !to_lower;
      pivot(leave_row, entering, w);

      if (theta <= kDegenerateStep) {
        if (++degenerate >= bland_after_ && !bland) {
          bland = true;
          used_bland_ = true;
        }
      }
    }
  }

  // After phase 1: nonbasic artificials are pinned at zero; basic ones keep
  // their (within-tolerance) phase-1 level as an upper bound. Forcing those to
  // zero would push the residual through B^{-1} into the structural
  // variables, whose bounds it can then exceed by far more than bound_tol.
  void retire_artificials() {
    for (Eigen::Index art = structural_; art < cols_; ++art) {
      if (is_basic(art)) {
        hi_(art) = std::max(x_(art), 0.0);
      } else {
        hi_(art) = 0.0;
        x_(art) = 0.0;
        at_upper_[static_cast<std::size_t>(art)] = false;
      }
    }
  }

  bool certify(const Vector& x, double residual_tol, std::string& detail) const {
    const double residual = (a_.leftCols(structural_) * x - b_).lpNorm<Eigen::Infinity>();
    if (residual > residual_tol) {
      detail = "constraint residual " + std::to_string(residual) + " above tolerance";
      return false;
    }
    for (Eigen::Index j = 0; j < structural_; ++j) {
      if (x(j) < lo_(j) - opt_.bound_tol || x(j) > hi_(j) + opt_.bound_tol) {
        detail = "variable " + std::to_string(j) + " violates its bounds by " +
                 std::to_string(std::max(lo_(j) - x(j), x(j) - hi_(j)));
        return false;
      }
    }
    return true;
  }

  LpOptions opt_;
  Eigen::Index rows_;
  Eigen::Index structural_;
  Eigen::Index cols_;
  Matrix a_;
  Vector b_;
  Vector lo_;
  Vector hi_;
  Vector x_;
  std::vector<bool> at_upper_;
  std::vector<Eigen::Index> position_;
  std::vector<Eigen::Index> basis_;
  Matrix binv_;
  std::size_t since_refactor_ = 0;
  std::size_t iterations_ = 0;
  std::size_t bland_after_ = 0;
  std::size_t max_iterations_ = 0;
  bool used_bland_ = false;
};

void check_problem(const LpProblem& p) {
  const Eigen::Index m = p.constraints.rows();
  const Eigen::Index n = p.constraints.cols();
  if (p.cost.size() != n || p.lower.size() != n || p.upper.size() != n || p.rhs.size() != m) {
    throw Error(ErrorCode::BadInput, "LP data has inconsistent dimensions");
  }
  if (!p.cost.allFinite() || !p.constraints.allFinite() || !p.rhs.allFinite() ||
      !p.lower.allFinite() || !p.upper.allFinite()) {
    throw Error(ErrorCode::BadInput, "LP data must be finite (including bounds)");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (p.lower(j) > p.upper(j)) {
      throw Error(ErrorCode::BadInput, "lower bound exceeds upper bound for variable " +
                                           std::to_string(j));
    }
  }
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options) {
  check_problem(problem);
  if (problem.constraints.rows() == 0) {
    // No rows: each variable sits at the bound its cost prefers.
    LpSolution out;
    out.x = problem.lower;
    for (Eigen::Index j = 0; j < out.x.size(); ++j) {
      if (!options.feasibility_only && problem.cost(j) < 0.0) out.x(j) = problem.upper(j);
    }
    out.objective = problem.cost.dot(out.x);
    out.status = LpStatus::Optimal;
    return out;
  }
  BoundedSimplex simplex(problem, options);
  try {
    return simplex.run(problem.cost);
  } catch (const NumericFailure& e) {
    LpSolution out;
    out.status = LpStatus::NumericFailure;
    out.detail = e.what();
    return out;
  }
}

}  // namespace handsoff
