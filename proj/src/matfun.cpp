#include "handsoff/matfun.hpp"

#include "handsoff/error.hpp"

#include <array>
#include <cmath>
#include <string>

namespace handsoff {

namespace {

// Degree-13 diagonal Pade coefficients and the matching scaling threshold
// (Higham, "The scaling and squaring method for the matrix exponential revisited").
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

Matrix augmented_exponential(const Matrix& a, const Vector& b, double h) {
  const Eigen::Index n = a.rows();
  Matrix aug = Matrix::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = a;
  aug.topRightCorner(n, 1) = b;
  return expm(aug, h);
}

}  // namespace

Matrix expm(const Matrix& a, double t) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::BadInput, "expm needs a square matrix");
  }
  if (!a.allFinite() || !std::isfinite(t)) {
    throw Error(ErrorCode::NumericFailure, "expm input has non-finite entries");
  }
  const Eigen::Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  Matrix scaled = a * t;

  const double norm1 = scaled.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    scaled /= std::ldexp(1.0, squarings);
  }

  const Matrix a2 = scaled * scaled;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  // Divided by c[0] so the denominator starts at I and expm(0) is exactly I.
  std::array<double, 14> c{};
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = kPade13[i] / kPade13[0];

  const Matrix u_inner = a6 * (c[13] * a6 + c[11] * a4 + c[9] * a2) + c[7] * a6 + c[5] * a4 +
                         c[3] * a2 + c[1] * ident;
  const Matrix u = scaled * u_inner;
  const Matrix v = a6 * (c[12] * a6 + c[10] * a4 + c[8] * a2) + c[6] * a6 + c[4] * a4 +
                   c[2] * a2 + c[0] * ident;

  Matrix result = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) {
    result = result * result;
  }
  if (!result.allFinite()) {
    throw Error(ErrorCode::NumericFailure, "matrix exponential overflowed");
  }
  return result;
}

Matrix controllability_matrix(const Matrix& a, const Vector& b) {
  const Eigen::Index n = a.rows();
  Matrix ctrb(n, n);
  Vector col = b;
  for (Eigen::Index j = 0; j < n; ++j) {
    ctrb.col(j) = col;
    col = a * col;
  }
  return ctrb;
}

ValidatedSystem validate_assumption(LtiSystem sys) {
  const Eigen::Index n = sys.dim();
  const Matrix ctrb = controllability_matrix(sys.a(), sys.b());

  Eigen::ColPivHouseholderQR<Matrix> qr(ctrb);
  qr.setThreshold(1e-10);
  // With a zero matrix there is no column scale to be relative to.
  const Eigen::Index rank = ctrb.colwise().norm().maxCoeff() > 0.0 ? qr.rank() : 0;
  if (rank != n) {
    throw Error(ErrorCode::Assumption, "(A, B) is not controllable (rank " + std::to_string(rank) +
                                           " < " + std::to_string(n) + ")");
  }

  const double op_norm = Eigen::JacobiSVD<Matrix>(sys.a()).singularValues()(0);
  const double det = sys.a().partialPivLu().determinant();
  if (!(std::abs(det) > 1e-12 * std::pow(op_norm, static_cast<double>(n)))) {
    throw Error(ErrorCode::Assumption, "A is singular (det A = " + std::to_string(det) + ")");
  }
  return ValidatedSystem(std::move(sys));
}

namespace {

// e^{-A t0} int_0^{len} e^{-A s} B ds
Vector shifted_input_integral(const LtiSystem& sys, double t0, double len) {
  const Eigen::Index n = sys.dim();
  const Matrix aug = augmented_exponential(-sys.a(), sys.b(), len);
  const Vector head = aug.topRightCorner(n, 1);
  if (t0 == 0.0) return head;
  return expm(sys.a(), -t0) * head;
}

}  // namespace

Vector input_integral(const LtiSystem& sys, double t0, double t1) {
  return shifted_input_integral(sys, t0, t1 - t0);
}

Vector cell_input_column(const LtiSystem& sys, const Grid& grid, std::size_t k) {
  if (k >= grid.cells()) {
    throw Error(ErrorCode::BadInput, "cell index " + std::to_string(k) + " out of range");
  }
  return shifted_input_integral(sys, grid.node(k), grid.width());
}

ZohStep zoh_discretize(const LtiSystem& sys, double h) {
  const Eigen::Index n = sys.dim();
  const Matrix aug = augmented_exponential(sys.a(), sys.b(), h);
  return {aug.topLeftCorner(n, n), aug.topRightCorner(n, 1)};
}

}  // namespace handsoff
