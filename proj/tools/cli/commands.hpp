#pragma once

#include "cli/io.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace handsoff::cli {

// Process exit codes, stable for scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFailed = 2;  // infeasible / out of reach / verification failure

struct SolveArgs {
  std::string system;
  std::string xi;
  std::optional<std::size_t> cells;
  std::optional<std::string> out;
};

struct SweepArgs {
  std::string system;
  std::string from;
  std::string to;
  std::size_t points = 101;
  std::optional<std::size_t> cells;
  std::string out;
  std::optional<std::size_t> threads;
};

struct VerifyArgs {
  std::string system;
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::size_t samples = 50;
  std::optional<std::size_t> cells;
  std::optional<std::string> out;
  std::optional<std::size_t> threads;
};

struct Oracle1dArgs {
  double a = 0.0;
  double b = 0.0;
  double horizon = 0.0;
  double xi = 0.0;
};

/// Flag, else HANDSOFF_THREADS, else hardware concurrency.
[[nodiscard]] std::size_t resolve_workers(std::optional<std::size_t> flag);

/// Report body for `verify`; contains no timestamps, so equal inputs give
/// byte-identical dumps. Sets `pass` to the conjunction of all suites.
[[nodiscard]] Json build_verify_report(const SystemSpec& spec, const VerifyArgs& args, bool& pass);

int run_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int run_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);
int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int run_oracle1d(const Oracle1dArgs& args, std::ostream& out, std::ostream& err);

}  // namespace handsoff::cli
