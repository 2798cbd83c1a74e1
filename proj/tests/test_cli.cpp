#include "cli/commands.hpp"
#include "cli/io.hpp"
#include "fixtures.hpp"
#include "handsoff/error.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <locale>
#include <set>
#include <sstream>

using namespace handsoff;
using namespace handsoff::cli;

namespace {

const std::string kScalar = std::string(HANDSOFF_DATA_DIR) + "/scalar.json";
const std::string kOscillator = std::string(HANDSOFF_DATA_DIR) + "/oscillator.json";

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "handsoff_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Assumption;
}

// Comma decimals and dot grouping, to catch locale leaks.
struct CommaDecimal : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
  char do_thousands_sep() const override { return '.'; }
  std::string do_grouping() const override { return "\3"; }
};

}  // namespace

TEST_CASE("vector flag parsing") {
  const Vector v = parse_vector("1,2.5,-3e2");
  REQUIRE(v.size() == 3);
  CHECK(v(0) == 1.0);
  CHECK(v(1) == 2.5);
  CHECK(v(2) == -300.0);
  CHECK(parse_vector(" 4 ")(0) == 4.0);
  for (const char* bad : {"", "1,", "abc", "1,,2", "1;2", "nan", "1e999"}) {
    CAPTURE(bad);
    CHECK(code_of([&] { (void)parse_vector(bad); }) == ErrorCode::BadInput);
  }
}

TEST_CASE("system file parsing") {
  const SystemSpec spec = load_system(kOscillator);
  CHECK(spec.system.dim() == 2);
  CHECK(spec.cells == 500u);
  CHECK(parse_system(system_to_json(spec.system)).system.a() == spec.system.a());

  CHECK(code_of([] { (void)load_system("/nonexistent/plant.json"); }) == ErrorCode::BadInput);
  CHECK(code_of([] { (void)parse_system(Json::parse(R"({"A": [[0, 1]], "B": [1], "T": 1})")); }) ==
        ErrorCode::BadInput);
  CHECK(code_of([] { (void)parse_system(Json::parse(R"({"A": [[-1]], "B": [1, 2], "T": 1})")); }) ==
        ErrorCode::BadInput);
  CHECK(code_of([] { (void)parse_system(Json::parse(R"({"A": [[-1]], "B": [1]})")); }) ==
        ErrorCode::BadInput);
  CHECK(code_of([] { (void)parse_system(Json::parse(R"({"A": [[-1]], "B": [1], "T": 1, "N": 0})")); }) ==
        ErrorCode::BadInput);
  CHECK(code_of([] { (void)parse_system(Json::parse(R"({"A": [["x"]], "B": [1], "T": 1})")); }) ==
        ErrorCode::BadInput);
}

TEST_CASE("numbers round-trip and ignore the global locale") {
  const std::locale saved = std::locale::global(std::locale(std::locale::classic(), new CommaDecimal));
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1234567.5) == "1234567.5");
  CHECK(std::stod(format_number(1.1202283409460639)) == 1.1202283409460639);

  std::vector<SweepRow> rows;
  rows.push_back({0.0, test::vec2(1000.5, -2.0), 0.25});
  rows.push_back({1.0, test::vec2(3.0, 4.0), std::nullopt});
  const std::string csv = sweep_to_csv(rows, 2);
  std::locale::global(saved);
  CHECK(csv == "s,xi_1,xi_2,V,status\n0,1000.5,-2,0.25,ok\n1,3,4,,infeasible\n");
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("solution JSON round trip reproduces the terminal residual") {
  const ValidatedSystem sys = test::oscillator();
  const HandsOffSolver solver(sys, 300);
  const SolveReport report = solver.solve(test::vec2(0.9, 0.3));
  const Json doc = Json::parse(solution_to_json(report).dump());
  const StoredSolution stored = solution_from_json(doc);
  CHECK(stored.xi == report.xi);
  CHECK(stored.control.size() == 300);
  const Vector again = solver.simulate(stored.xi, stored.control);
  CHECK((again - stored.terminal_residual).lpNorm<Eigen::Infinity>() <= 1e-12);
  CHECK(doc["status"] == "optimal");
  CHECK(doc["grid"]["N"] == 300);
}

TEST_CASE("solve command exit codes") {
  std::ostringstream out, err;
  SolveArgs args{kScalar, "100", 1000u, scratch("solve.json").string()};
  CHECK(run_solve(args, out, err) == kExitOk);
  const Json doc = Json::parse(slurp(*args.out));
  CHECK(doc["value"].get<double>() == doctest::Approx(1.1202283409460639).epsilon(0.01));
  CHECK(!std::filesystem::exists(*args.out + ".tmp"));

  args.xi = "0";
  CHECK(run_solve(args, out, err) == kExitOk);
  const Json zero = Json::parse(slurp(*args.out));
  CHECK(zero["value"] == 0.0);
  for (const auto& u : zero["u"]) CHECK(u == 0.0);

  args.xi = "200";
  CHECK(run_solve(args, out, err) == kExitFailed);
  CHECK(Json::parse(slurp(*args.out))["status"] == "infeasible");

  args.xi = "1,2";
  CHECK(run_solve(args, out, err) == kExitError);
  args.system = "/nonexistent.json";
  args.xi = "1";
  CHECK(run_solve(args, out, err) == kExitError);
  CHECK(!err.str().empty());
}

TEST_CASE("sweep command") {
  std::ostringstream out, err;
  SweepArgs args{kScalar, "-160", "160", 5, 500u, scratch("sweep.csv").string(), 1u};
  CHECK(run_sweep(args, out, err) == kExitOk);
  const std::string csv = slurp(args.out);
  std::istringstream lines(csv);
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line)) all.push_back(line);
  REQUIRE(all.size() == 6);
  CHECK(all[0] == "s,xi_1,V,status");
  CHECK(all[1].ends_with(",,infeasible"));
  CHECK(all[3] == "0.5,0,0,ok");
  CHECK(all[5].ends_with(",,infeasible"));

  args.points = 1;
  CHECK(run_sweep(args, out, err) == kExitError);
}

TEST_CASE("verify command and report determinism") {
  std::ostringstream out, err;
  VerifyArgs args;
  args.system = kScalar;
  args.suite = "bangoffbang";
  args.samples = 5;
  args.out = scratch("verify.json").string();
  args.threads = 1;
  CHECK(run_verify(args, out, err) == kExitOk);
  const std::string first = slurp(*args.out);
  args.threads = 3;
  CHECK(run_verify(args, out, err) == kExitOk);
  CHECK(slurp(*args.out) == first);
  const Json doc = Json::parse(first);
  CHECK(doc["seed"] == 0);
  CHECK(doc["pass"] == true);

  args.system = kOscillator;
  args.suite = "oracle1d";
  CHECK(run_verify(args, out, err) == kExitError);

  bool pass = false;
  VerifyArgs all;
  all.system = kOscillator;
  all.samples = 2;
  all.cells = 100;
  const Json report = build_verify_report(load_system(kOscillator), all, pass);
  std::set<std::string> suites;
  for (const auto& s : report["suites"]) suites.insert(s["suite"].get<std::string>());
  CHECK(suites.count("oracle1d") == 0);
  CHECK(suites.size() == 4);
}

TEST_CASE("oracle1d command") {
  std::ostringstream out, err;
  CHECK(run_oracle1d({-1.0, 1.0, 5.0, 100.0}, out, err) == kExitOk);
  CHECK(out.str().find("x1 = 147.413") != std::string::npos);
  CHECK(out.str().find("tau = 3.8797") != std::string::npos);
  CHECK(out.str().find("V = 1.1202") != std::string::npos);

  std::ostringstream zero;
  CHECK(run_oracle1d({-1.0, 1.0, 5.0, 0.0}, zero, err) == kExitOk);
  CHECK(zero.str().find("tau = 5\n") != std::string::npos);
  CHECK(zero.str().find("V = 0\n") != std::string::npos);

  CHECK(run_oracle1d({-1.0, 1.0, 5.0, 150.0}, out, err) == kExitFailed);
  CHECK(run_oracle1d({1.0, 1.0, 5.0, 1.0}, out, err) == kExitError);
  CHECK(run_oracle1d({-1.0, 0.0, 5.0, 1.0}, out, err) == kExitError);
}

TEST_CASE("worker resolution") {
  CHECK(resolve_workers(3u) == 3);
  CHECK(resolve_workers(std::nullopt) >= 1);
}
