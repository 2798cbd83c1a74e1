#pragma once

#include "handsoff/model.hpp"

#include <cstddef>
#include <utility>

namespace handsoff {

/// e^{A t} by scaling and squaring with a degree-13 Pade approximant.
/// Throws ErrorCode::NumericFailure when the result overflows.
[[nodiscard]] Matrix expm(const Matrix& a, double t = 1.0);

/// An LtiSystem that has passed validate_assumption(). Solver entry points
/// take this type so an unchecked plant cannot reach them.
class ValidatedSystem {
 public:
  [[nodiscard]] const LtiSystem& system() const noexcept { return sys_; }
  [[nodiscard]] const Matrix& a() const noexcept { return sys_.a(); }
  [[nodiscard]] const Vector& b() const noexcept { return sys_.b(); }
  [[nodiscard]] double horizon() const noexcept { return sys_.horizon(); }
  [[nodiscard]] Eigen::Index dim() const noexcept { return sys_.dim(); }

 private:
  explicit ValidatedSystem(LtiSystem sys) : sys_(std::move(sys)) {}
  friend ValidatedSystem validate_assumption(LtiSystem sys);

  LtiSystem sys_;
};

/// Checks that (A, B) is controllable and A is nonsingular.
///
/// Rank of [B, AB, ..., A^{n-1}B] is taken from a column-pivoted QR with
/// threshold 1e-10 relative to the largest column norm; A counts as singular
/// when |det A| <= 1e-12 * ||A||_2^n. Throws ErrorCode::Assumption naming the
/// failed condition.
[[nodiscard]] ValidatedSystem validate_assumption(LtiSystem sys);

[[nodiscard]] Matrix controllability_matrix(const Matrix& a, const Vector& b);

/// int_{t0}^{t1} e^{-A s} B ds, via one augmented exponential.
[[nodiscard]] Vector input_integral(const LtiSystem& sys, double t0, double t1);

/// g_k = int_{t_k}^{t_{k+1}} e^{-A s} B ds, so that sum_k g_k u_k is the exact
/// constraint integral for a zero-order-hold control.
[[nodiscard]] Vector cell_input_column(const LtiSystem& sys, const Grid& grid, std::size_t k);

/// Exact zero-order-hold discretization: x+ = state * x + input * u.
struct ZohStep {
  Matrix state;
  Vector input;
};

[[nodiscard]] ZohStep zoh_discretize(const LtiSystem& sys, double h);

}  // namespace handsoff
