#include "handsoff/oracle1d.hpp"

#include "handsoff/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace handsoff {

namespace {

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

Scalar1dSystem::Scalar1dSystem(double a, double b, double horizon) : a_(a), b_(b), horizon_(horizon) {
  if (!(a < 0.0) || !std::isfinite(a)) throw Error(ErrorCode::BadInput, "closed form needs a < 0");
  if (!(b != 0.0) || !std::isfinite(b)) throw Error(ErrorCode::BadInput, "closed form needs b != 0");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorCode::BadInput, "closed form needs T > 0");
  }
}

Scalar1dSystem Scalar1dSystem::from(const LtiSystem& sys) {
  if (sys.dim() != 1) {
    throw Error(ErrorCode::BadInput, "closed form exists only for scalar plants (n = 1)");
  }
  return Scalar1dSystem(sys.a()(0, 0), sys.b()(0), sys.horizon());
}

std::optional<Scalar1dSystem> Scalar1dSystem::try_from(const LtiSystem& sys) {
  if (sys.dim() != 1 || !(sys.a()(0, 0) < 0.0) || sys.b()(0) == 0.0) return std::nullopt;
  return from(sys);
}

Interval reachable_interval(const Scalar1dSystem& s) {
  const double x1 = -std::abs(s.b()) * std::expm1(-s.a() * s.horizon()) / s.a();
  return {-x1, x1};
}

double switching_time(const Scalar1dSystem& s, double xi) {
  const double x1 = reachable_interval(s).hi;
  if (!(std::abs(xi) <= x1)) {
    throw Error(ErrorCode::OutOfReach,
                "|xi| = " + std::to_string(std::abs(xi)) + " exceeds x1 = " + std::to_string(x1));
  }
  const double arg = std::exp(-s.a() * s.horizon()) + s.a() * std::abs(xi / s.b());
  // Rounding can push arg a hair below 1 at |xi| = x1.
  const double tau = -std::log(std::max(arg, 1.0)) / s.a();
  return std::min(tau, s.horizon());
}

double oracle_value(const Scalar1dSystem& s, double xi) { return s.horizon() - switching_time(s, xi); }

double oracle_slope(const Scalar1dSystem& s, double r) {
  return 1.0 / (std::abs(s.b()) * std::exp(-s.a() * s.horizon()) + s.a() * r);
}

ControlSignal oracle_control(const Scalar1dSystem& s, double xi, const Grid& grid) {
  const double tau = switching_time(s, xi);
  const double late = -sign(s.b()) * sign(xi);
  std::vector<double> u(grid.cells(), 0.0);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double t0 = grid.node(k);
    const double t1 = grid.node(k + 1);
    if (t1 <= tau) continue;
    if (t0 >= tau) {
      u[k] = late;
    } else if (t1 - tau >= tau - t0) {
      u[k] = late;
    }
  }
  return ControlSignal(grid, std::move(u));
}

}  // namespace handsoff
