#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace handsoff {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Single-input plant dx/dt = A x + B u on the horizon [0, T].
///
/// Construction only checks shapes and the horizon; controllability and
/// invertibility of A are checked by validate_assumption().
class LtiSystem {
 public:
  LtiSystem(Matrix a, Vector b, double horizon);

  [[nodiscard]] const Matrix& a() const noexcept { return a_; }
  [[nodiscard]] const Vector& b() const noexcept { return b_; }
  [[nodiscard]] double horizon() const noexcept { return horizon_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return a_.rows(); }

 private:
  Matrix a_;
  Vector b_;
  double horizon_;
};

/// Uniform partition of [0, T] into `cells` intervals of width T / cells.
class Grid {
 public:
  Grid(double horizon, std::size_t cells);

  [[nodiscard]] double horizon() const noexcept { return horizon_; }
  [[nodiscard]] std::size_t cells() const noexcept { return cells_; }
  [[nodiscard]] double width() const noexcept { return width_; }

  // t_k = k h, with t_N pinned to T.
  [[nodiscard]] double node(std::size_t k) const noexcept;

 private:
  double horizon_;
  std::size_t cells_;
  double width_;
};

/// Threshold below which |u_k| counts as zero when measuring the support.
class ZeroTolerance {
 public:
  static constexpr double kDefault = 1e-6;

  constexpr ZeroTolerance() = default;
  explicit ZeroTolerance(double eps);

  [[nodiscard]] constexpr double value() const noexcept { return eps_; }

 private:
  double eps_ = kDefault;
};

/// Zero-order-hold control: u(t) = values[k] on [t_k, t_{k+1}).
class ControlSignal {
 public:
  ControlSignal(Grid grid, std::vector<double> values);

  static ControlSignal zeros(Grid grid);

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t k) const { return values_[k]; }

  [[nodiscard]] ControlSignal negated() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

[[nodiscard]] double l1_norm(const ControlSignal& u);
[[nodiscard]] double linf_norm(const ControlSignal& u);
[[nodiscard]] double l0_norm(const ControlSignal& u, ZeroTolerance tol = {});

}  // namespace handsoff
