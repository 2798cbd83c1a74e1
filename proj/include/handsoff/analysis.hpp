#pragma once

#include "handsoff/solver.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace handsoff {

/// Seeded sampler. Uniform and Gaussian draws are built directly on the raw
/// mt19937_64 stream so reports reproduce bit-for-bit across standard
/// library implementations.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                     // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();
  Vector direction(Eigen::Index n);  // uniform on the unit sphere

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
/// handled exactly once; callers write results into per-index slots.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body);

struct BoundaryProbe {
  double radius = 0.0;  // feasible end of the final bracket
  double infeasible_at = 0.0;
  std::size_t iterations = 0;
};

inline constexpr std::size_t kMaxBisections = 80;

/// Bracket width at which bisection stops, relative to the radius.
[[nodiscard]] inline double bisection_tolerance(double r) { return 1e-6 * (1.0 + r); }

/// Largest r with r d in R (or in R_alpha when a budget is given), by
/// bisection on the feasibility oracle. Valid because R_alpha is convex and
/// contains the origin. `d` must be a unit vector.
[[nodiscard]] BoundaryProbe probe_boundary(const HandsOffSolver& solver, const Vector& d,
                                           std::optional<double> alpha = std::nullopt);

[[nodiscard]] double boundary_radius(const ValidatedSystem& sys, const Vector& d, std::size_t cells,
                                     std::optional<double> alpha = std::nullopt);

struct PropertyFailure {
  std::size_t index = 0;  // sample index within the suite
  std::string check;
  std::vector<double> inputs;
  std::vector<double> observed;
  double tolerance = 0.0;
  std::string detail;
};

struct PropertyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<PropertyFailure> failures;  // sorted by index, then check
  std::map<std::string, double> tolerances;
  std::map<std::string, double> metrics;

  [[nodiscard]] bool pass() const noexcept { return failures.empty(); }
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 50;
  std::size_t workers = 1;
};

struct LevelSetOptions : SuiteOptions {
  // Empty selects {0.05, 0.1, 0.2, 0.4} * T.
  std::vector<double> alphas;
  // |V(boundary point) - alpha| bound; unset selects 1e-3 * T.
  std::optional<double> level_tol;
};

struct ConvexityOptions : SuiteOptions {
  double convexity_slack = 1e-7;
  double interior_fraction = 0.95;
  // Pairs closer than this skip the strictness check. Unset selects
  // 0.03 * min radius on scalar plants with a closed form, 0.1 * min radius
  // otherwise.
  std::optional<double> strict_min_separation;
  // Minimum LP midpoint gap as a fraction of T, for plants without a closed form.
  double strict_margin_rel = 1e-4;
  // Required LP gap as a fraction of the closed-form gap.
  double oracle_gap_ratio = 0.5;
};

struct ContinuityOptions : SuiteOptions {
  double box_fraction = 0.9;
  // Pass-1 neighbour distance as a fraction of the smallest sampled radius.
  double step_fraction = 0.02;
  double stability_factor = 2.0;
  std::size_t ray_directions = 8;
  std::size_t ray_steps = 10;
};

struct BangOffBangOptions : SuiteOptions {
  double interior_fraction = 0.95;
};

struct Oracle1dOptions : SuiteOptions {
  // Samples are evenly spaced on [-half_width, half_width]; unset selects 0.95 x1.
  std::optional<double> half_width;
  double value_tol = 0.01;
  double control_match = 0.995;
};

/// Level-set checks along random rays: boundary of R_alpha has V = alpha,
/// interior points have V < alpha, points just outside are over budget,
/// radii nest in alpha, R_T = R, R_0 = {0}, and R is centrally symmetric.
[[nodiscard]] PropertyReport level_set_suite(const HandsOffSolver& solver, const LevelSetOptions& opt);

/// Midpoint convexity of V at lambda in {1/4, 1/2, 3/4}, plus a strictness
/// margin on well-separated pairs.
[[nodiscard]] PropertyReport convexity_suite(const HandsOffSolver& solver, const ConvexityOptions& opt);

/// Two-pass empirical Lipschitz estimate inside box_fraction * R, and
/// one-sided convergence of V along rays towards the boundary.
[[nodiscard]] PropertyReport continuity_suite(const HandsOffSolver& solver, const ContinuityOptions& opt);

/// Vertex structure of optimal controls: at most n fractional cells,
/// |l0 - l1| <= n h, terminal state within tolerance, V(xi) = V(-xi).
[[nodiscard]] PropertyReport bang_off_bang_suite(const HandsOffSolver& solver,
                                                 const BangOffBangOptions& opt);

/// LP value and control against the scalar closed form. Throws
/// ErrorCode::BadInput if the plant is not scalar with a < 0, b != 0.
[[nodiscard]] PropertyReport oracle1d_suite(const HandsOffSolver& solver, const Oracle1dOptions& opt);

struct LineSpec {
  Vector origin;
  Vector direction;
  double s_from = 0.0;
  double s_to = 1.0;
  std::size_t points = 2;
};

struct SweepRow {
  double s = 0.0;
  Vector xi;
  std::optional<double> value;  // empty when xi is outside R
};

/// V along origin + s * direction at `points` evenly spaced s.
[[nodiscard]] std::vector<SweepRow> sweep_value(const HandsOffSolver& solver, const LineSpec& line,
                                                std::size_t workers = 1);

}  // namespace handsoff
