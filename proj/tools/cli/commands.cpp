#include "cli/commands.hpp"

#include "handsoff/error.hpp"
#include "handsoff/oracle1d.hpp"

#include <cstdlib>
#include <ostream>
#include <thread>

namespace handsoff::cli {

namespace {

constexpr const char* kSuites[] = {"bangoffbang", "convexity", "continuity", "levelset", "oracle1d"};

std::size_t resolve_cells(const SystemSpec& spec, std::optional<std::size_t> flag) {
  return flag.value_or(spec.cells.value_or(kDefaultCells));
}

// Runs `body`, mapping library errors onto exit codes.
template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.code() == ErrorCode::OutOfReach || e.code() == ErrorCode::Infeasible ? kExitFailed : kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

void emit(const std::optional<std::string>& path, const std::string& content, std::ostream& out) {
  if (path) {
    write_atomic(*path, content);
  } else {
    out << content;
  }
}

}  // namespace

std::size_t resolve_workers(std::optional<std::size_t> flag) {
  if (flag) return std::max<std::size_t>(*flag, 1);
  if (const char* env = std::getenv("HANDSOFF_THREADS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(std::thread::hardware_concurrency(), 1);
}

Json build_verify_report(const SystemSpec& spec, const VerifyArgs& args, bool& pass) {
  const std::string& suite = args.suite;
  bool known = suite == "all";
  for (const char* s : kSuites) known = known || suite == s;
  if (!known) throw Error(ErrorCode::BadInput, "unknown suite \"" + suite + "\"");

  const ValidatedSystem sys = validate_assumption(spec.system);
  const bool scalar_closed_form = Scalar1dSystem::try_from(spec.system).has_value();
  if (suite == "oracle1d" && !scalar_closed_form) {
    throw Error(ErrorCode::BadInput, "oracle1d needs a scalar plant with a < 0 and b != 0");
  }
  const std::size_t cells = resolve_cells(spec, args.cells);
  const HandsOffSolver solver(sys, cells);

  SuiteOptions common;
  common.seed = args.seed;
  common.samples = args.samples;
  common.workers = resolve_workers(args.threads);

  auto wants = [&](std::string_view name) { return suite == "all" || suite == name; };
  std::vector<PropertyReport> reports;
  if (wants("bangoffbang")) {
    BangOffBangOptions opt;
    static_cast<SuiteOptions&>(opt) = common;
    reports.push_back(bang_off_bang_suite(solver, opt));
  }
  if (wants("convexity")) {
    ConvexityOptions opt;
    static_cast<SuiteOptions&>(opt) = common;
    reports.push_back(convexity_suite(solver, opt));
  }
  if (wants("continuity")) {
    ContinuityOptions opt;
    static_cast<SuiteOptions&>(opt) = common;
    reports.push_back(continuity_suite(solver, opt));
  }
  if (wants("levelset")) {
    LevelSetOptions opt;
    static_cast<SuiteOptions&>(opt) = common;
    reports.push_back(level_set_suite(solver, opt));
  }
  if (wants("oracle1d") && scalar_closed_form) {
    Oracle1dOptions opt;
    static_cast<SuiteOptions&>(opt) = common;
    reports.push_back(oracle1d_suite(solver, opt));
  }

  pass = true;
  Json suites = Json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass();
    suites.push_back(report_to_json(r));
  }
  return {
      {"system", system_to_json(spec.system)},
      {"N", cells},
      {"seed", args.seed},
      {"samples", args.samples},
      {"suite", suite},
      {"suites", suites},
      {"pass", pass},
  };
}

int run_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SystemSpec spec = load_system(args.system);
    const ValidatedSystem sys = validate_assumption(spec.system);
    const Vector xi = parse_vector(args.xi);
    if (xi.size() != sys.dim()) {
      throw Error(ErrorCode::BadInput, "--xi needs " + std::to_string(sys.dim()) + " components");
    }
    const HandsOffSolver solver(sys, resolve_cells(spec, args.cells));
    try {
      const SolveReport report = solver.solve(xi);
      emit(args.out, solution_to_json(report).dump(2) + "\n", out);
      return kExitOk;
    } catch (const InfeasibleError& e) {
      emit(args.out, infeasible_to_json(xi, solver.grid(), e.residual()).dump(2) + "\n", out);
      err << e.what() << '\n';
      return kExitFailed;
    }
  });
}

int run_sweep(const SweepArgs& args, std::ostream& /*out*/, std::ostream& err) {
  return guarded(err, [&] {
    const SystemSpec spec = load_system(args.system);
    const ValidatedSystem sys = validate_assumption(spec.system);
    const Vector from = parse_vector(args.from);
    const Vector to = parse_vector(args.to);
    if (from.size() != sys.dim() || to.size() != sys.dim()) {
      throw Error(ErrorCode::BadInput, "--from/--to need " + std::to_string(sys.dim()) + " components");
    }
    const HandsOffSolver solver(sys, resolve_cells(spec, args.cells));
    const LineSpec line{from, to - from, 0.0, 1.0, args.points};
    const auto rows = sweep_value(solver, line, resolve_workers(args.threads));
    write_atomic(args.out, sweep_to_csv(rows, sys.dim()));
    return kExitOk;
  });
}

int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SystemSpec spec = load_system(args.system);
    bool pass = false;
    const Json report = build_verify_report(spec, args, pass);
    emit(args.out, report.dump(2) + "\n", out);
    if (!pass) err << "verification failed; see report\n";
    return pass ? kExitOk : kExitFailed;
  });
}

int run_oracle1d(const Oracle1dArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scalar1dSystem s(args.a, args.b, args.horizon);
    const double x1 = reachable_interval(s).hi;
    const double tau = switching_time(s, args.xi);
    out << "x1 = " << format_number(x1) << '\n'
        << "tau = " << format_number(tau) << '\n'
        << "V = " << format_number(args.horizon - tau) << '\n';
    return kExitOk;
  });
}

}  // namespace handsoff::cli
