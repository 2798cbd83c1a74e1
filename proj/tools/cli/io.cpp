#include "cli/io.hpp"

#include "handsoff/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace handsoff::cli {

namespace {

[[noreturn]] void bad_input(const std::string& message) { throw Error(ErrorCode::BadInput, message); }

double number_at(const Json& v, const std::string& where) {
  if (!v.is_number()) bad_input(where + " must be a number");
  return v.get<double>();
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const Json& v, const std::string& where) {
  if (!v.is_array()) bad_input(where + " must be an array");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = number_at(v[i], where + "[" + std::to_string(i) + "]");
  }
  return out;
}

}  // namespace

SystemSpec parse_system(const Json& doc) {
  if (!doc.is_object()) bad_input("system file must hold a JSON object");
  for (const char* key : {"A", "B", "T"}) {
    if (!doc.contains(key)) bad_input(std::string("system file is missing \"") + key + "\"");
  }
  const Json& rows = doc["A"];
  if (!rows.is_array() || rows.empty()) bad_input("\"A\" must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      bad_input("\"A\" must be square (" + std::to_string(n) + " x " + std::to_string(n) + ")");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = number_at(row[static_cast<std::size_t>(j)], "A");
    }
  }
  const Vector b = vector_from_json(doc["B"], "B");
  const double horizon = number_at(doc["T"], "T");

  std::optional<std::size_t> cells;
  if (doc.contains("N")) {
    const Json& cells_json = doc["N"];
    if (!cells_json.is_number_integer() || cells_json.get<long long>() < 1) {
      bad_input("\"N\" must be a positive integer");
    }
    cells = cells_json.get<std::size_t>();
  }
  return {LtiSystem(a, b, horizon), cells};
}

SystemSpec load_system(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad_input("cannot open system file " + path.string());
  Json doc;
  try {
    in >> doc;
  } catch (const Json::parse_error& e) {
    bad_input("cannot parse " + path.string() + ": " + e.what());
  }
  return parse_system(doc);
}

Json system_to_json(const LtiSystem& sys) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < sys.dim(); ++i) rows.push_back(vector_to_json(sys.a().row(i).transpose()));
  return {{"A", rows}, {"B", vector_to_json(sys.b())}, {"T", sys.horizon()}};
}

Vector parse_vector(std::string_view text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view field = text.substr(pos, comma - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || end != field.data() + field.size() || !std::isfinite(v)) {
      bad_input("cannot parse \"" + std::string(text) + "\" as a comma-separated vector");
    }
    values.push_back(v);
    pos = comma + 1;
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::string format_number(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

Json solution_to_json(const SolveReport& report) {
  Json u = Json::array();
  for (double v : report.control.values()) u.push_back(v);
  return {
      {"status", std::string(to_string(report.status))},
      {"value", report.value},
      {"l1", report.l1},
      {"l0", report.l0},
      {"linf", report.linf},
      {"bang_off_bang_fraction", report.bang_off_bang_fraction},
      {"cells",
       {{"zero", report.cells.zero},
        {"plus", report.cells.plus},
        {"minus", report.cells.minus},
        {"fractional", report.cells.fractional}}},
      {"terminal_residual", vector_to_json(report.terminal_residual)},
      {"xi", vector_to_json(report.xi)},
      {"grid", {{"T", report.control.grid().horizon()}, {"N", report.control.grid().cells()}}},
      {"u", u},
  };
}

Json infeasible_to_json(const Vector& xi, const Grid& grid, double phase_one_residual) {
  return {
      {"status", std::string(to_string(LpStatus::Infeasible))},
      {"phase_one_residual", phase_one_residual},
      {"xi", vector_to_json(xi)},
      {"grid", {{"T", grid.horizon()}, {"N", grid.cells()}}},
  };
}

StoredSolution solution_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("grid") || !doc.contains("u") || !doc.contains("xi")) {
    bad_input("solution file needs \"grid\", \"u\" and \"xi\"");
  }
  const Grid grid(number_at(doc["grid"]["T"], "grid.T"), doc["grid"]["N"].get<std::size_t>());
  const Vector u = vector_from_json(doc["u"], "u");
  std::vector<double> values(u.data(), u.data() + u.size());
  Vector residual = doc.contains("terminal_residual")
                        ? vector_from_json(doc["terminal_residual"], "terminal_residual")
                        : Vector();
  return {vector_from_json(doc["xi"], "xi"), ControlSignal(grid, std::move(values)), std::move(residual)};
}

Json report_to_json(const PropertyReport& report) {
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"index", f.index},
                        {"check", f.check},
                        {"inputs", f.inputs},
                        {"observed", f.observed},
                        {"tolerance", f.tolerance},
                        {"detail", f.detail}});
  }
  return {
      {"suite", report.suite},
      {"seed", report.seed},
      {"samples", report.samples},
      {"pass", report.pass()},
      {"tolerances", report.tolerances},
      {"metrics", report.metrics},
      {"failures", failures},
  };
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, Eigen::Index dim) {
  std::string out = "s";
  for (Eigen::Index i = 1; i <= dim; ++i) out += ",xi_" + std::to_string(i);
  out += ",V,status\n";
  for (const auto& row : rows) {
    out += format_number(row.s);
    for (Eigen::Index i = 0; i < dim; ++i) out += "," + format_number(row.xi(i));
    out += ",";
    if (row.value) out += format_number(*row.value);
    out += row.value ? ",ok\n" : ",infeasible\n";
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) bad_input("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) bad_input("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) bad_input("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

}  // namespace handsoff::cli
