#pragma once

#include "handsoff/model.hpp"

#include <optional>

namespace handsoff {

/// Scalar plant dx/dt = a x + b u with a < 0 and b != 0, for which the
/// reachable set, switching time and value function have closed forms.
class Scalar1dSystem {
 public:
  /// Throws ErrorCode::BadInput unless a < 0, b != 0 and T > 0.
  Scalar1dSystem(double a, double b, double horizon);

  /// Accepts a 1x1 LtiSystem meeting the same hypotheses.
  static Scalar1dSystem from(const LtiSystem& sys);
  static std::optional<Scalar1dSystem> try_from(const LtiSystem& sys);

  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double b() const noexcept { return b_; }
  [[nodiscard]] double horizon() const noexcept { return horizon_; }

 private:
  double a_;
  double b_;
  double horizon_;
};

struct Interval {
  double lo;
  double hi;
};

/// R = [-x1, x1] with x1 = -|b| (e^{-aT} - 1) / a.
[[nodiscard]] Interval reachable_interval(const Scalar1dSystem& s);

/// tau = -log(e^{-aT} + a |xi / b|) / a; the control is off before tau.
/// Throws ErrorCode::OutOfReach when |xi| > x1.
[[nodiscard]] double switching_time(const Scalar1dSystem& s, double xi);

/// V(xi) = T - tau.
[[nodiscard]] double oracle_value(const Scalar1dSystem& s, double xi);

/// |dV/dxi| at |xi| = r: 1 / (|b| e^{-aT} + a r). Increasing in r.
[[nodiscard]] double oracle_slope(const Scalar1dSystem& s, double r);

/// Closed-form control sampled on `grid`: 0 before tau, -sgn(b) sgn(xi)
/// after. The cell containing tau takes the regime covering more of it,
/// ties going to the later regime.
[[nodiscard]] ControlSignal oracle_control(const Scalar1dSystem& s, double xi, const Grid& grid);

}  // namespace handsoff
