#pragma once

#include "handsoff/matfun.hpp"
#include "handsoff/model.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace handsoff::test {

// dx/dt = -x + u on [0, 5].
inline LtiSystem scalar_plant(double a = -1.0, double b = 1.0, double horizon = 5.0) {
  return LtiSystem(Matrix::Constant(1, 1, a), Vector::Constant(1, b), horizon);
}

inline ValidatedSystem scalar_example() { return validate_assumption(scalar_plant()); }

inline LtiSystem oscillator_plant() {
  Matrix a(2, 2);
  a << 0.0, 1.0, -1.0, 0.0;
  Vector b(2);
  b << 0.0, 1.0;
  return LtiSystem(a, b, 2.0 * std::numbers::pi);
}

inline ValidatedSystem oscillator() { return validate_assumption(oscillator_plant()); }

inline Vector vec1(double v) { return Vector::Constant(1, v); }

inline Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// e^5 - 1, the scalar example's reachable bound.
inline const double kX1 = std::exp(5.0) - 1.0;

}  // namespace handsoff::test
