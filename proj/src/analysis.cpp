#include "handsoff/analysis.hpp"

#include "handsoff/error.hpp"
#include "handsoff/oracle1d.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>
#include <utility>

namespace handsoff {

double SampleRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SampleRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double SampleRng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  // Box-Muller; 1 - uniform() lies in (0, 1] so the log is finite.
  const double radius = std::sqrt(-2.0 * std::log(1.0 - uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

Vector SampleRng::direction(Eigen::Index n) {
  Vector d(n);
  do {
    for (Eigen::Index i = 0; i < n; ++i) d(i) = normal();
  } while (d.norm() < 1e-12);
  return d / d.norm();
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

BoundaryProbe probe_boundary(const HandsOffSolver& solver, const Vector& d, std::optional<double> alpha) {
  if (d.size() != solver.system().dim() || std::abs(d.norm() - 1.0) > 1e-9) {
    throw Error(ErrorCode::BadInput, "probe direction must be a unit vector of the state dimension");
  }
  if (alpha && !(*alpha >= 0.0)) {
    throw Error(ErrorCode::BadInput, "budget must be non-negative");
  }
  const Matrix& cols = solver.transcription().columns;
  // ||xi|| <= sum_k ||g_k||, and with a budget also <= alpha * max_k ||g_k|| / h.
  double upper = cols.colwise().norm().sum();
  if (alpha) {
    upper = std::min(upper, *alpha * cols.colwise().norm().maxCoeff() / solver.grid().width());
  }
  upper = 1.01 * upper;

  auto feasible = [&](double r) {
    const Vector xi = r * d;
    return alpha ? solver.feasible_with_budget(xi, *alpha) : solver.feasible(xi);
  };

  BoundaryProbe probe;
  if (upper <= 0.0) return probe;
  if (feasible(upper)) {
    probe.radius = probe.infeasible_at = upper;
    return probe;
  }
  double lo = 0.0;
  double hi = upper;
  while (hi - lo > bisection_tolerance(lo) && probe.iterations < kMaxBisections) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
    ++probe.iterations;
  }
  probe.radius = lo;
  probe.infeasible_at = hi;
  return probe;
}

double boundary_radius(const ValidatedSystem& sys, const Vector& d, std::size_t cells,
                       std::optional<double> alpha) {
  return probe_boundary(HandsOffSolver(sys, cells), d, alpha).radius;
}

namespace {

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> concat(std::initializer_list<Vector> parts) {
  std::vector<double> out;
  for (const auto& p : parts) out.insert(out.end(), p.data(), p.data() + p.size());
  return out;
}

// Boundary radii keyed by (direction, budget). Scalar plants only ever see
// d = +-1, so suites would otherwise repeat the same bisection many times.
class RadiusCache {
 public:
  explicit RadiusCache(const HandsOffSolver& solver) : solver_(solver) {}

  double operator()(const Vector& d, std::optional<double> alpha = std::nullopt) {
    Key key{to_std(d), alpha.value_or(-1.0)};
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const double r = probe_boundary(solver_, d, alpha).radius;
    std::lock_guard lock(mutex_);
    cache_.emplace(std::move(key), r);
    return r;
  }

 private:
  using Key = std::pair<std::vector<double>, double>;
  const HandsOffSolver& solver_;
  std::mutex mutex_;
  std::map<Key, double> cache_;
};

class FailureSlots {
 public:
  explicit FailureSlots(std::size_t n) : slots_(n) {}

  void add(std::size_t index, std::string check, std::vector<double> inputs, std::vector<double> observed,
           double tolerance, std::string detail = {}) {
    slots_[index].push_back(
        {index, std::move(check), std::move(inputs), std::move(observed), tolerance, std::move(detail)});
  }

  // Run one sample; anything thrown becomes a failure record.
  template <typename Fn>
  void guard(std::size_t index, Fn&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      add(index, "exception", {}, {}, 0.0, e.what());
    }
  }

  std::vector<PropertyFailure> flatten() {
    std::vector<PropertyFailure> out;
    for (auto& s : slots_) {
      for (auto& f : s) out.push_back(std::move(f));
    }
    return out;
  }

 private:
  std::vector<std::vector<PropertyFailure>> slots_;
};

void require_samples(std::size_t samples, std::size_t minimum, const char* suite) {
  if (samples < minimum) {
    throw Error(ErrorCode::BadInput,
                std::string(suite) + " needs at least " + std::to_string(minimum) + " samples");
  }
}

double lp_norm_inf(const Vector& v) { return v.lpNorm<Eigen::Infinity>(); }

}  // namespace

PropertyReport level_set_suite(const HandsOffSolver& solver, const LevelSetOptions& opt) {
  require_samples(opt.samples, 1, "levelset");
  const double horizon = solver.system().horizon();
  std::vector<double> alphas = opt.alphas;
  if (alphas.empty()) alphas = {0.05 * horizon, 0.1 * horizon, 0.2 * horizon, 0.4 * horizon};
  std::sort(alphas.begin(), alphas.end());
  for (double a : alphas) {
    if (!(a > 0.0 && a <= horizon)) {
      throw Error(ErrorCode::BadInput, "level-set budgets must lie in (0, T]");
    }
  }
  const double level_tol = opt.level_tol.value_or(1e-3 * horizon);

  PropertyReport report;
  report.suite = "levelset";
  report.seed = opt.seed;
  report.samples = opt.samples;
  report.tolerances = {{"level", level_tol}, {"bisection_rel", 1e-6}, {"exterior_scale", 1.01}};

  SampleRng rng(opt.seed);
  std::vector<Vector> dirs;
  for (std::size_t i = 0; i < opt.samples; ++i) dirs.push_back(rng.direction(solver.system().dim()));

  RadiusCache radius(solver);
  FailureSlots fails(opt.samples);
  std::vector<double> max_level_error(opt.samples, 0.0);

  parallel_for(opt.samples, opt.workers, [&](std::size_t i) {
    fails.guard(i, [&] {
      const Vector& d = dirs[i];
      const double r_full = radius(d);
      const double btol = 2.0 * bisection_tolerance(r_full);

      const double r_neg = radius(-d);
      if (std::abs(r_full - r_neg) > btol) {
        fails.add(i, "central_symmetry", to_std(d), {r_full, r_neg}, btol);
      }
      const double r_t = radius(d, horizon);
      if (std::abs(r_t - r_full) > btol) {
        fails.add(i, "budget_T_equals_R", to_std(d), {r_t, r_full}, btol);
      }
      const double r_0 = radius(d, 0.0);
      if (r_0 > bisection_tolerance(0.0)) {
        fails.add(i, "budget_zero_is_origin", to_std(d), {r_0}, bisection_tolerance(0.0));
      }

      double prev = r_0;
      for (double alpha : alphas) {
        const double r_a = radius(d, alpha);
        const double ntol = 2.0 * bisection_tolerance(r_a);
        if (r_a < prev - ntol || r_a > r_full + ntol) {
          fails.add(i, "nesting", concat({d, Vector::Constant(1, alpha)}), {prev, r_a, r_full}, ntol);
        }
        prev = r_a;

        const double v_boundary = solver.value(r_a * d);
        const double err = std::abs(v_boundary - alpha);
        max_level_error[i] = std::max(max_level_error[i], err);
        if (err > level_tol) {
          fails.add(i, "boundary_value", concat({d, Vector::Constant(1, alpha)}), {r_a, v_boundary},
                    level_tol);
        }
        for (double s : {0.5, 0.9}) {
          const double v_in = solver.value(s * r_a * d);
          if (!(v_in < alpha)) {
            fails.add(i, "interior_value", concat({d, Vector::Constant(1, alpha)}), {s * r_a, v_in}, 0.0);
          }
        }
        const double r_out = 1.01 * r_a + bisection_tolerance(r_a);
        if (solver.feasible_with_budget(r_out * d, alpha)) {
          fails.add(i, "exterior_over_budget", concat({d, Vector::Constant(1, alpha)}), {r_out}, 0.0);
        }
      }
    });
  });

  report.failures = fails.flatten();
  report.metrics["max_level_error"] = *std::max_element(max_level_error.begin(), max_level_error.end());
  return report;
}

PropertyReport convexity_suite(const HandsOffSolver& solver, const ConvexityOptions& opt) {
  require_samples(opt.samples, 1, "convexity");
  const double horizon = solver.system().horizon();
  const Eigen::Index n = solver.system().dim();
  const auto oracle = Scalar1dSystem::try_from(solver.system().system());
  constexpr std::array<double, 3> kLambdas = {0.25, 0.5, 0.75};

  struct Pair {
    Vector d1, d2;
    double f1 = 0.0, f2 = 0.0;
    double r1 = 0.0, r2 = 0.0;
    Vector xi, eta;
    double v_xi = 0.0, v_eta = 0.0;
    std::array<double, 3> v_mid{};
    bool ok = false;
  };
  SampleRng rng(opt.seed);
  std::vector<Pair> pairs(opt.samples);
  for (auto& p : pairs) {
    p.d1 = rng.direction(n);
    p.d2 = rng.direction(n);
    p.f1 = rng.uniform(0.0, opt.interior_fraction);
    p.f2 = rng.uniform(0.0, opt.interior_fraction);
  }

  RadiusCache radius(solver);
  FailureSlots fails(opt.samples);
  parallel_for(opt.samples, opt.workers, [&](std::size_t i) {
    fails.guard(i, [&] {
      Pair& p = pairs[i];
      p.r1 = radius(p.d1);
      p.r2 = radius(p.d2);
      p.xi = p.f1 * p.r1 * p.d1;
      p.eta = p.f2 * p.r2 * p.d2;
      p.v_xi = solver.value(p.xi);
      p.v_eta = solver.value(p.eta);
      for (std::size_t l = 0; l < kLambdas.size(); ++l) {
        const double lam = kLambdas[l];
        p.v_mid[l] = solver.value((1.0 - lam) * p.xi + lam * p.eta);
      }
      p.ok = true;
    });
  });

  double min_radius = std::numeric_limits<double>::infinity();
  for (const auto& p : pairs) {
    if (p.ok) min_radius = std::min({min_radius, p.r1, p.r2});
  }
  const double separation =
      opt.strict_min_separation.value_or((oracle ? 0.03 : 0.1) * min_radius);
  const double strict_margin = opt.strict_margin_rel * horizon;

  double max_violation = -std::numeric_limits<double>::infinity();
  double min_strict_ratio = std::numeric_limits<double>::infinity();
  std::size_t strict_checked = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Pair& p = pairs[i];
    if (!p.ok) continue;
    const bool separated = (p.xi - p.eta).norm() >= separation;
    for (std::size_t l = 0; l < kLambdas.size(); ++l) {
      const double lam = kLambdas[l];
      const double chord = (1.0 - lam) * p.v_xi + lam * p.v_eta;
      const double gap = chord - p.v_mid[l];
      max_violation = std::max(max_violation, -gap);
      const auto inputs = concat({p.xi, p.eta, Vector::Constant(1, lam)});
      if (gap < -opt.convexity_slack) {
        fails.add(i, "midpoint_convexity", inputs, {p.v_mid[l], chord}, opt.convexity_slack);
      }
      if (!separated) continue;
      ++strict_checked;
      if (oracle) {
        const double xi = p.xi(0), eta = p.eta(0);
        const double oracle_gap = (1.0 - lam) * oracle_value(*oracle, xi) + lam * oracle_value(*oracle, eta) -
                                  oracle_value(*oracle, (1.0 - lam) * xi + lam * eta);
        const double ratio = oracle_gap > 0.0 ? gap / oracle_gap : std::numeric_limits<double>::infinity();
        min_strict_ratio = std::min(min_strict_ratio, ratio);
        if (gap < opt.oracle_gap_ratio * oracle_gap) {
          fails.add(i, "strict_gap_vs_oracle", inputs, {gap, oracle_gap}, opt.oracle_gap_ratio);
        }
      } else {
        min_strict_ratio = std::min(min_strict_ratio, gap / strict_margin);
        if (gap < strict_margin) {
          fails.add(i, "strict_gap", inputs, {gap}, strict_margin);
        }
      }
    }
  }

  PropertyReport report;
  report.suite = "convexity";
  report.seed = opt.seed;
  report.samples = opt.samples;
  report.tolerances = {{"convexity_slack", opt.convexity_slack},
                       {"strict_min_separation", separation},
                       {oracle ? "oracle_gap_ratio" : "strict_margin", oracle ? opt.oracle_gap_ratio : strict_margin}};
  report.failures = fails.flatten();
  report.metrics["max_convexity_violation"] = max_violation;
  report.metrics["strict_checks"] = static_cast<double>(strict_checked);
  if (strict_checked > 0) report.metrics["min_strict_ratio"] = min_strict_ratio;
  return report;
}

PropertyReport continuity_suite(const HandsOffSolver& solver, const ContinuityOptions& opt) {
  require_samples(opt.samples, 2, "continuity");
  const double horizon = solver.system().horizon();
  const Eigen::Index n = solver.system().dim();
  const auto oracle = Scalar1dSystem::try_from(solver.system().system());

  struct Sample {
    Vector d, e;
    double s = 0.0;
    double r = 0.0;
    Vector xi;
    double v = 0.0;
    std::array<double, 2> ratio{};  // pass 1 (delta), pass 2 (delta / 2)
    double reach = 0.0;             // largest |xi| touched, for the closed-form bound
    bool ok = false;
  };
  SampleRng rng(opt.seed);
  std::vector<Sample> samples(opt.samples);
  for (auto& s : samples) {
    s.d = rng.direction(n);
    s.e = rng.direction(n);
    s.s = rng.uniform();
  }

  RadiusCache radius(solver);
  FailureSlots fails(opt.samples);
  parallel_for(opt.samples, opt.workers, [&](std::size_t i) {
    fails.guard(i, [&] { samples[i].r = radius(samples[i].d); });
  });
  double min_radius = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) min_radius = std::min(min_radius, s.r);
  const double delta = opt.step_fraction * min_radius;

  auto in_box = [&](const Vector& x) { return solver.feasible(x / opt.box_fraction); };

  parallel_for(opt.samples, opt.workers, [&](std::size_t i) {
    fails.guard(i, [&] {
      Sample& s = samples[i];
      s.xi = s.s * opt.box_fraction * s.r * s.d;
      double sign = 1.0;
      if (!in_box(s.xi + delta * s.e)) {
        sign = -1.0;
        if (!in_box(s.xi - delta * s.e)) {
          fails.add(i, "neighbour_in_box", to_std(s.xi), {}, delta, "no neighbour inside the box");
          return;
        }
      }
      s.v = solver.value(s.xi);
      s.reach = s.xi.norm() + delta;
      for (std::size_t pass = 0; pass < 2; ++pass) {
        const double step = delta / static_cast<double>(1u << pass);
        const Vector nb = s.xi + sign * step * s.e;
        s.ratio[pass] = std::abs(solver.value(nb) - s.v) / (nb - s.xi).norm();
      }
      s.ok = true;
    });
  });

  double lip1 = 0.0, lip2 = 0.0, reach = 0.0;
  for (const auto& s : samples) {
    if (!s.ok) continue;
    lip1 = std::max(lip1, s.ratio[0]);
    lip2 = std::max(lip2, s.ratio[1]);
    reach = std::max(reach, s.reach);
  }

  PropertyReport report;
  report.suite = "continuity";
  report.seed = opt.seed;
  report.samples = opt.samples;
  report.tolerances = {{"box_fraction", opt.box_fraction},
                       {"delta", delta},
                       {"stability_factor", opt.stability_factor}};
  report.metrics["lipschitz_pass1"] = lip1;
  report.metrics["lipschitz_pass2"] = lip2;

  // Global checks are filed under index 0.
  const double f = opt.stability_factor;
  if (std::max(lip1, lip2) > 1e-12 && (lip2 > f * lip1 || lip1 > f * lip2)) {
    fails.add(0, "lipschitz_stability", {delta}, {lip1, lip2}, f);
  }
  if (oracle) {
    const double bound = oracle_slope(*oracle, std::min(reach, reachable_interval(*oracle).hi));
    report.metrics["oracle_lipschitz"] = bound;
    report.tolerances["oracle_factor"] = f;
    if (std::max(lip1, lip2) > f * bound) {
      fails.add(0, "lipschitz_oracle_bound", {reach}, {lip1, lip2}, f * bound);
    }
  }

  // One-sided approach to the boundary along a few of the sampled rays.
  const std::size_t rays = std::min(opt.ray_directions, opt.samples);
  parallel_for(rays, opt.workers, [&](std::size_t i) {
    fails.guard(i, [&] {
      const Sample& s = samples[i];
      std::vector<double> v;
      for (std::size_t j = 1; j <= opt.ray_steps; ++j) {
        v.push_back(solver.value(s.r * (1.0 - std::ldexp(1.0, -static_cast<int>(j))) * s.d));
      }
      const double mono_tol = 1e-9 * (1.0 + horizon);
      for (std::size_t j = 1; j < v.size(); ++j) {
        if (v[j] < v[j - 1] - mono_tol) {
          fails.add(i, "ray_monotone", to_std(s.d), {v[j - 1], v[j]}, mono_tol);
        }
      }
      const double first = std::abs(v[1] - v[0]);
      const double last = std::abs(v.back() - v[v.size() - 2]);
      if (last > 0.5 * first + 1e-6 * horizon) {
        fails.add(i, "ray_convergence", to_std(s.d), {first, last}, 0.5);
      }
      if (v.back() > horizon + 1e-9) {
        fails.add(i, "ray_bounded_by_T", to_std(s.d), {v.back()}, horizon);
      }
    });
  });

  report.failures = fails.flatten();
  return report;
}

PropertyReport bang_off_bang_suite(const HandsOffSolver& solver, const BangOffBangOptions& opt) {
  require_samples(opt.samples, 1, "bangoffbang");
  const Eigen::Index n = solver.system().dim();
  const double h = solver.grid().width();
  const double horizon = solver.system().horizon();

  SampleRng rng(opt.seed);
  std::vector<Vector> dirs;
  std::vector<double> scales;
  for (std::size_t i = 0; i < opt.samples; ++i) {
    dirs.push_back(rng.direction(n));
    scales.push_back(rng.uniform(0.0, opt.interior_fraction));
  }

  RadiusCache radius(solver);
  FailureSlots fails(opt.samples);
  std::vector<double> fractional(opt.samples, 0.0), gap(opt.samples, 0.0), residual(opt.samples, 0.0);
  const double gap_tol = static_cast<double>(n) * h + 1e-12 * horizon;

  parallel_for(opt.samples, opt.workers, [&](std::size_t i) {
    fails.guard(i, [&] {
      const Vector xi = scales[i] * radius(dirs[i]) * dirs[i];
      const SolveReport rep = solver.solve(xi);
      const auto in = to_std(xi);

      fractional[i] = static_cast<double>(rep.cells.fractional);
      if (rep.cells.fractional > static_cast<std::size_t>(n)) {
        fails.add(i, "fractional_cells", in, {fractional[i]}, static_cast<double>(n));
      }
      gap[i] = rep.l0 - rep.l1;
      if (gap[i] > gap_tol || gap[i] < -1e-6 * horizon) {
        fails.add(i, "l0_equals_l1", in, {rep.l0, rep.l1}, gap_tol);
      }
      const double value_tol = 1e-9 * (1.0 + rep.value);
      if (std::abs(rep.l1 - rep.value) > value_tol) {
        fails.add(i, "l1_equals_value", in, {rep.l1, rep.value}, value_tol);
      }
      residual[i] = lp_norm_inf(rep.terminal_residual);
      if (residual[i] > terminal_tolerance(xi)) {
        fails.add(i, "terminal_state", in, {residual[i]}, terminal_tolerance(xi));
      }
      if (rep.max_split_product != 0.0) {
        fails.add(i, "split_complementarity", in, {rep.max_split_product}, 0.0);
      }
      const double mirrored = solver.value(-xi);
      const double sym_tol = 1e-12 * (1.0 + rep.value);
      if (std::abs(mirrored - rep.value) > sym_tol) {
        fails.add(i, "value_symmetry", in, {rep.value, mirrored}, sym_tol);
      }
    });
  });

  PropertyReport report;
  report.suite = "bangoffbang";
  report.seed = opt.seed;
  report.samples = opt.samples;
  report.tolerances = {{"max_fractional_cells", static_cast<double>(n)},
                       {"l0_minus_l1", gap_tol},
                       {"terminal_rel", 1e-6}};
  report.failures = fails.flatten();
  report.metrics["max_fractional_cells"] = *std::max_element(fractional.begin(), fractional.end());
  report.metrics["max_l0_minus_l1"] = *std::max_element(gap.begin(), gap.end());
  report.metrics["max_terminal_residual"] = *std::max_element(residual.begin(), residual.end());
  return report;
}

PropertyReport oracle1d_suite(const HandsOffSolver& solver, const Oracle1dOptions& opt) {
  require_samples(opt.samples, 2, "oracle1d");
  const Scalar1dSystem scalar = Scalar1dSystem::from(solver.system().system());
  const double x1 = reachable_interval(scalar).hi;
  const double half_width = opt.half_width.value_or(0.95 * x1);
  if (!(half_width >= 0.0 && half_width <= x1)) {
    throw Error(ErrorCode::BadInput, "oracle sample range must lie inside [-x1, x1]");
  }

  FailureSlots fails(opt.samples);
  std::vector<double> value_err(opt.samples, 0.0), match(opt.samples, 1.0);
  parallel_for(opt.samples, opt.workers, [&](std::size_t i) {
    fails.guard(i, [&] {
      const double xi = -half_width + 2.0 * half_width * static_cast<double>(i) /
                                          static_cast<double>(opt.samples - 1);
      const SolveReport rep = solver.solve(Vector::Constant(1, xi));
      const double expected = oracle_value(scalar, xi);
      value_err[i] = std::abs(rep.value - expected);
      if (value_err[i] > opt.value_tol) {
        fails.add(i, "value_vs_closed_form", {xi}, {rep.value, expected}, opt.value_tol);
      }
      const ControlSignal ref = oracle_control(scalar, xi, solver.grid());
      std::size_t agree = 0;
      for (std::size_t k = 0; k < ref.size(); ++k) {
        if (classify_cell(rep.control[k], solver.options().zero_tol) ==
            classify_cell(ref[k], solver.options().zero_tol)) {
          ++agree;
        }
      }
      match[i] = static_cast<double>(agree) / static_cast<double>(ref.size());
      if (match[i] < opt.control_match) {
        fails.add(i, "control_vs_closed_form", {xi}, {match[i]}, opt.control_match);
      }
      if (lp_norm_inf(rep.terminal_residual) > terminal_tolerance(rep.xi)) {
        fails.add(i, "terminal_state", {xi}, {lp_norm_inf(rep.terminal_residual)}, terminal_tolerance(rep.xi));
      }
    });
  });

  PropertyReport report;
  report.suite = "oracle1d";
  report.seed = opt.seed;
  report.samples = opt.samples;
  report.tolerances = {{"value_abs", opt.value_tol}, {"control_match", opt.control_match},
                       {"half_width", half_width}};
  report.failures = fails.flatten();
  report.metrics["max_value_error"] = *std::max_element(value_err.begin(), value_err.end());
  report.metrics["min_control_match"] = *std::min_element(match.begin(), match.end());
  return report;
}

std::vector<SweepRow> sweep_value(const HandsOffSolver& solver, const LineSpec& line, std::size_t workers) {
  if (line.points < 2) throw Error(ErrorCode::BadInput, "a sweep needs at least 2 points");
  const Eigen::Index n = solver.system().dim();
  if (line.origin.size() != n || line.direction.size() != n) {
    throw Error(ErrorCode::BadInput, "sweep line has the wrong dimension");
  }
  std::vector<SweepRow> rows(line.points);
  parallel_for(line.points, workers, [&](std::size_t i) {
    const double t = static_cast<double>(i) / static_cast<double>(line.points - 1);
    SweepRow& row = rows[i];
    row.s = line.s_from + t * (line.s_to - line.s_from);
    row.xi = line.origin + row.s * line.direction;
    try {
      row.value = solver.value(row.xi);
    } catch (const InfeasibleError&) {
      row.value.reset();
    }
  });
  return rows;
}

}  // namespace handsoff
