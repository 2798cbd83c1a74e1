#include "fixtures.hpp"
#include "handsoff/analysis.hpp"
#include "handsoff/error.hpp"
#include "handsoff/oracle1d.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <set>

using namespace handsoff;

namespace {

const HandsOffSolver& scalar_solver() {
  static const HandsOffSolver solver(test::scalar_example(), 1000);
  return solver;
}

const HandsOffSolver& oscillator_solver() {
  static const HandsOffSolver solver(test::oscillator(), 200);
  return solver;
}

bool same_report(const PropertyReport& a, const PropertyReport& b) {
  if (a.failures.size() != b.failures.size()) return false;
  for (std::size_t i = 0; i < a.failures.size(); ++i) {
    if (a.failures[i].index != b.failures[i].index || a.failures[i].check != b.failures[i].check ||
        a.failures[i].observed != b.failures[i].observed)
      return false;
  }
  return a.metrics == b.metrics && a.tolerances == b.tolerances && a.samples == b.samples;
}

}  // namespace

TEST_CASE("sample generator is reproducible") {
  SampleRng a(5), b(5), c(6);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(a.normal() != c.normal());
  const Vector d = a.direction(3);
  CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("parallel_for visits each index once") {
  for (std::size_t workers : {1u, 2u, 5u}) {
    std::vector<std::atomic<int>> hits(57);
    parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
}

TEST_CASE("scalar boundary radius") {
  const ValidatedSystem sys = test::scalar_example();
  const double r_plus = boundary_radius(sys, test::vec1(1.0), 1000);
  const double r_minus = boundary_radius(sys, test::vec1(-1.0), 1000);
  CHECK(std::abs(r_plus - test::kX1) <= 1e-3 * test::kX1);
  CHECK(std::abs(r_minus - r_plus) <= bisection_tolerance(r_plus));

  const double r_budget = boundary_radius(sys, test::vec1(1.0), 1000, 1.1202283409460639);
  CHECK(r_budget == doctest::Approx(100.0).epsilon(0.01));
  CHECK(boundary_radius(sys, test::vec1(1.0), 1000, 0.0) <= bisection_tolerance(0.0));
  CHECK(boundary_radius(sys, test::vec1(1.0), 1000, 5.0) == doctest::Approx(r_plus).epsilon(1e-5));
}

TEST_CASE("probe brackets the boundary") {
  const BoundaryProbe p = probe_boundary(scalar_solver(), test::vec1(1.0));
  CHECK(scalar_solver().feasible(test::vec1(p.radius)));
  CHECK_FALSE(scalar_solver().feasible(test::vec1(p.infeasible_at)));
  CHECK(p.infeasible_at - p.radius <= bisection_tolerance(p.radius));
  CHECK(p.iterations <= kMaxBisections);
}

TEST_CASE("oscillator radii nest in the budget") {
  SampleRng rng(3);
  for (int i = 0; i < 4; ++i) {
    const Vector d = rng.direction(2);
    double prev = 0.0;
    for (double alpha : {0.5, 1.5, 3.0}) {
      const double r = probe_boundary(oscillator_solver(), d, alpha).radius;
      CHECK(r >= prev - bisection_tolerance(r));
      prev = r;
    }
    const double full = probe_boundary(oscillator_solver(), d).radius;
    CHECK(prev <= full + bisection_tolerance(full));
    CHECK(std::abs(probe_boundary(oscillator_solver(), -d).radius - full) <= 2.0 * bisection_tolerance(full));
  }
}

TEST_CASE("convexity midpoint example") {
  const HandsOffSolver& s = scalar_solver();
  const double v_xi = s.value(test::vec1(-50.0));
  const double v_eta = s.value(test::vec1(100.0));
  const double v_mid = s.value(test::vec1(25.0));
  CHECK(v_mid < 0.5 * (v_xi + v_eta));
  CHECK(0.5 * (v_xi + v_eta) == doctest::Approx(0.7655269075558848).epsilon(0.01));
  CHECK(s.value(test::vec1(0.0)) == 0.0);
  CHECK(s.value(test::vec1(60.0)) == s.value(test::vec1(-60.0)));
}

TEST_CASE("sweep matches the closed form") {
  LineSpec line{test::vec1(0.0), test::vec1(1.0), -147.0, 147.0, 101};
  const std::vector<SweepRow> rows = sweep_value(scalar_solver(), line, 2);
  REQUIRE(rows.size() == 101);
  const Scalar1dSystem oracle(-1.0, 1.0, 5.0);
  for (const SweepRow& row : rows) {
    REQUIRE(row.value.has_value());
    const double want = oracle_value(oracle, row.xi(0));
    CHECK(std::abs(*row.value - want) <= 0.005 * want + 1e-12);
  }
  CHECK(*rows[50].value == 0.0);
  CHECK(rows[50].s == 0.0);

  LineSpec wide{test::vec1(0.0), test::vec1(1.0), -160.0, 160.0, 5};
  const std::vector<SweepRow> mixed = sweep_value(scalar_solver(), wide);
  CHECK_FALSE(mixed.front().value.has_value());
  CHECK_FALSE(mixed.back().value.has_value());
  CHECK(mixed[2].value.has_value());
}

TEST_CASE("suites are reproducible from the seed and worker-independent") {
  ConvexityOptions one;
  one.seed = 9;
  one.samples = 8;
  one.workers = 1;
  ConvexityOptions many = one;
  many.workers = 3;
  const PropertyReport a = convexity_suite(oscillator_solver(), one);
  const PropertyReport b = convexity_suite(oscillator_solver(), many);
  CHECK(a.pass());
  CHECK(a.seed == 9);
  CHECK(same_report(a, b));

  BangOffBangOptions bob;
  bob.seed = 1;
  bob.samples = 6;
  const PropertyReport c = bang_off_bang_suite(oscillator_solver(), bob);
  CHECK(c.pass());
  CHECK(same_report(c, bang_off_bang_suite(oscillator_solver(), bob)));
}

TEST_CASE("scalar suites pass") {
  LevelSetOptions level;
  level.samples = 4;
  const PropertyReport lr = level_set_suite(scalar_solver(), level);
  CHECK(lr.pass());
  CHECK(lr.tolerances.at("level") == doctest::Approx(5e-3));

  Oracle1dOptions oracle;
  oracle.samples = 20;
  const PropertyReport orr = oracle1d_suite(scalar_solver(), oracle);
  CHECK(orr.pass());
  CHECK_THROWS_AS((void)oracle1d_suite(oscillator_solver(), oracle), Error);
}

TEST_CASE("zero samples are rejected") {
  ConvexityOptions opt;
  opt.samples = 0;
  CHECK_THROWS_AS((void)convexity_suite(scalar_solver(), opt), Error);
}
