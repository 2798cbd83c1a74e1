#pragma once

#include "handsoff/analysis.hpp"
#include "handsoff/matfun.hpp"
#include "handsoff/solver.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace handsoff::cli {

using Json = nlohmann::json;

/// Plant file: {"A": [[...], ...], "B": [...], "T": 5.0, "N": 1000}.
struct SystemSpec {
  LtiSystem system;
  std::optional<std::size_t> cells;
};

/// Throws ErrorCode::BadInput on malformed or dimensionally inconsistent files.
[[nodiscard]] SystemSpec parse_system(const Json& doc);
[[nodiscard]] SystemSpec load_system(const std::filesystem::path& path);
[[nodiscard]] Json system_to_json(const LtiSystem& sys);

/// "1,2.5,-3" -> vector. Throws ErrorCode::BadInput.
[[nodiscard]] Vector parse_vector(std::string_view text);

/// Shortest round-trip decimal form, independent of the global locale.
[[nodiscard]] std::string format_number(double v);

[[nodiscard]] Json solution_to_json(const SolveReport& report);
[[nodiscard]] Json infeasible_to_json(const Vector& xi, const Grid& grid, double phase_one_residual);

struct StoredSolution {
  Vector xi;
  ControlSignal control;
  Vector terminal_residual;
};

[[nodiscard]] StoredSolution solution_from_json(const Json& doc);

[[nodiscard]] Json report_to_json(const PropertyReport& report);

/// Header `s,xi_1,...,xi_n,V,status`, LF line endings, '.' decimals.
[[nodiscard]] std::string sweep_to_csv(const std::vector<SweepRow>& rows, Eigen::Index dim);

/// Write to a sibling temporary file, then rename over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace handsoff::cli
