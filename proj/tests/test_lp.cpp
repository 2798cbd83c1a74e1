#include "handsoff/error.hpp"
#include "handsoff/lp.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <optional>
#include <random>
#include <vector>

using namespace handsoff;

namespace {

double residual(const LpProblem& p, const Vector& x) {
  return (p.constraints * x - p.rhs).lpNorm<Eigen::Infinity>();
}

std::size_t interior_count(const LpProblem& p, const Vector& x, double tol = 1e-9) {
  std::size_t count = 0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) > p.lower(j) + tol && x(j) < p.upper(j) - tol) ++count;
  }
  return count;
}

// Exhaustive vertex search: every basis choice times every bound pattern of
// the nonbasic variables. Only for tiny problems.
std::optional<double> brute_force_minimum(const LpProblem& p) {
  const Eigen::Index m = p.constraints.rows(), n = p.constraints.cols();
  std::optional<double> best;
  std::vector<bool> mask(static_cast<std::size_t>(n), false);
  std::fill(mask.begin(), mask.begin() + m, true);
  do {
    std::vector<Eigen::Index> basic, nonbasic;
    for (Eigen::Index j = 0; j < n; ++j) (mask[static_cast<std::size_t>(j)] ? basic : nonbasic).push_back(j);
    Matrix basis(m, m);
    for (Eigen::Index i = 0; i < m; ++i) basis.col(i) = p.constraints.col(basic[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<Matrix> lu(basis);
    if (lu.rank() < m) continue;
    for (unsigned pattern = 0; pattern < (1u << nonbasic.size()); ++pattern) {
      Vector x = Vector::Zero(n);
      for (std::size_t j = 0; j < nonbasic.size(); ++j) {
        const Eigen::Index v = nonbasic[j];
        x(v) = (pattern >> j) & 1u ? p.upper(v) : p.lower(v);
      }
      const Vector xb = lu.solve(p.rhs - p.constraints * x);
      bool ok = true;
      for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Index v = basic[static_cast<std::size_t>(i)];
        if (xb(i) < p.lower(v) - 1e-10 || xb(i) > p.upper(v) + 1e-10) ok = false;
        x(v) = xb(i);
      }
      if (!ok) continue;
      const double obj = p.cost.dot(x);
      if (!best || obj < *best) best = obj;
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

LpProblem random_problem(std::mt19937_64& rng, Eigen::Index m, Eigen::Index n) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LpProblem p;
  p.constraints = Matrix::NullaryExpr(m, n, [&] { return gauss(rng); });
  p.cost = Vector::NullaryExpr(n, [&] { return gauss(rng); });
  p.lower = Vector::NullaryExpr(n, [&] { return -unit(rng); });
  p.upper = p.lower + Vector::NullaryExpr(n, [&] { return 0.1 + 2.0 * unit(rng); });
  // Half the draws target a known interior point, the rest are arbitrary and
  // often infeasible.
  if (unit(rng) < 0.5) {
    const Vector inside = p.lower + (p.upper - p.lower).cwiseProduct(Vector::Constant(n, 0.5));
    p.rhs = p.constraints * inside;
  } else {
    p.rhs = Vector::NullaryExpr(m, [&] { return 4.0 * gauss(rng); });
  }
  return p;
}

}  // namespace

TEST_CASE("single fixed variable") {
  LpProblem p{Vector::Ones(1), Matrix::Ones(1, 1), Vector::Zero(1), Vector::Constant(1, -1.0),
              Vector::Ones(1)};
  const LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.x(0) == doctest::Approx(0.0));
  CHECK(s.objective == doctest::Approx(0.0));
}

TEST_CASE("split-variable prototype") {
  Matrix g(1, 2);
  g << 1.0, -1.0;
  LpProblem p{Vector::Ones(2), g, Vector::Constant(1, 0.5), Vector::Zero(2), Vector::Ones(2)};
  const LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.x(0) == doctest::Approx(0.5));
  CHECK(s.x(1) == doctest::Approx(0.0));
  CHECK(s.objective == doctest::Approx(0.5));
}

TEST_CASE("infeasible right-hand side") {
  Matrix g(1, 2);
  g << 1.0, 1.0;
  LpProblem p{Vector::Ones(2), g, Vector::Constant(1, 3.0), Vector::Zero(2), Vector::Ones(2)};
  const LpSolution s = solve_lp(p);
  CHECK(s.status == LpStatus::Infeasible);
  CHECK(s.phase_one_residual == doctest::Approx(1.0));
}

TEST_CASE("bad inputs are rejected") {
  Matrix g(1, 2);
  g << 1.0, 1.0;
  LpProblem p{Vector::Ones(2), g, Vector::Constant(1, 1.0), Vector::Zero(2), Vector::Ones(2)};
  LpProblem unbounded = p;
  unbounded.upper(0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS((void)solve_lp(unbounded), Error);
  LpProblem crossed = p;
  crossed.lower(1) = 2.0;
  CHECK_THROWS_AS((void)solve_lp(crossed), Error);
  LpProblem shape = p;
  shape.cost = Vector::Ones(3);
  CHECK_THROWS_AS((void)solve_lp(shape), Error);
}

TEST_CASE("random small LPs agree with vertex enumeration") {
  std::mt19937_64 rng(2024);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index m = 1 + trial % 3;
    const Eigen::Index n = m + 1 + (trial / 3) % 4;
    const LpProblem p = random_problem(rng, m, n);
    const LpSolution s = solve_lp(p);
    const std::optional<double> want = brute_force_minimum(p);
    CAPTURE(trial);
    if (!want) {
      CHECK(s.status == LpStatus::Infeasible);
      ++infeasible;
      continue;
    }
    REQUIRE(s.status == LpStatus::Optimal);
    ++optimal;
    CHECK(s.objective == doctest::Approx(*want).epsilon(1e-8).scale(1.0));
    // Certification invariants.
    CHECK(residual(p, s.x) <= 1e-8 * (1.0 + p.rhs.lpNorm<Eigen::Infinity>()));
    CHECK((s.x - p.lower).minCoeff() >= -1e-9);
    CHECK((p.upper - s.x).minCoeff() >= -1e-9);
    CHECK(interior_count(p, s.x) <= static_cast<std::size_t>(m));
    CHECK(std::abs(p.cost.dot(s.x) - s.objective) <= 1e-10 * (1.0 + std::abs(s.objective)));
  }
  // Both branches of the generator must actually be exercised.
  CHECK(optimal > 100);
  CHECK(infeasible > 20);
}

TEST_CASE("identical inputs give identical outputs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const LpProblem p = random_problem(rng, 3, 12);
    const LpSolution a = solve_lp(p), b = solve_lp(p);
    CHECK(a.status == b.status);
    CHECK(a.iterations == b.iterations);
    CHECK(a.x == b.x);
    CHECK(a.objective == b.objective);
  }
}

TEST_CASE("Bland's rule on a degenerate problem") {
  // Many identical columns and a zero right-hand side: every pivot is degenerate.
  const Eigen::Index n = 30;
  Matrix g(2, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    g(0, j) = (j % 2 == 0) ? 1.0 : -1.0;
    g(1, j) = (j % 3 == 0) ? 1.0 : -1.0;
  }
  Vector cost = Vector::NullaryExpr(n, [](Eigen::Index j) { return -1.0 + 0.01 * static_cast<double>(j % 5); });
  LpProblem p{cost, g, Vector::Zero(2), Vector::Zero(n), Vector::Ones(n)};

  LpOptions eager;
  eager.bland_after = 1;
  const LpSolution with_bland = solve_lp(p, eager);
  const LpSolution plain = solve_lp(p);
  REQUIRE(with_bland.status == LpStatus::Optimal);
  REQUIRE(plain.status == LpStatus::Optimal);
  CHECK(with_bland.objective == doctest::Approx(plain.objective).epsilon(1e-10));
  CHECK(with_bland.used_bland);
}

TEST_CASE("feasibility-only mode skips optimisation") {
  Matrix g(1, 2);
  g << 1.0, -1.0;
  LpProblem p{Vector::Ones(2), g, Vector::Constant(1, 0.5), Vector::Zero(2), Vector::Ones(2)};
  LpOptions opt;
  opt.feasibility_only = true;
  const LpSolution s = solve_lp(p, opt);
  CHECK(s.status == LpStatus::Optimal);
  CHECK(residual(p, s.x) <= 1e-8);
}
