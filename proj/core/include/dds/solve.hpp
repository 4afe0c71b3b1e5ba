#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dds/path_follower.hpp"
#include "dds/report.hpp"

namespace dds {

/// Process exit codes of `ddsolve solve`.
enum class ExitCode : int {
  eps_solution = 0,
  infeasible = 1,
  unbounded = 2,
  ill_conditioned = 3,
  input_error = 4,
  numerical_failure = 5,
};

ExitCode exit_code_for(Status status) noexcept;

struct SolveOptions {
  double epsilon = 1e-8;
  std::optional<double> xi;
  std::optional<double> kappa;
  int max_iterations = 500;
  std::optional<std::filesystem::path> trace;
  bool strict = false;
};

/// Shortest decimal that reads back to the same double.
std::string format_double(double value);

inline constexpr const char* kTraceHeader = "iter,mu,tau,gap,p_feas,d_feas,proximity";

std::string format_trace_row(const TraceRow& row);

struct SolveOutcome {
  RunReport report;
  FollowResult result;
};

/**
 * Runs the path follower on a loaded problem and builds the report. Writes
 * the CSV trace as rows arrive when options.trace is set. Throws
 * Error{parse_error} if the trace file cannot be opened, or for ε outside (0,1).
 */
SolveOutcome run_solve(const Problem& problem, const StartData& start,
                       const SolveOptions& options);

/**
 * The whole `solve` command: parse, validate, solve, print the report to
 * `out`. Input errors are printed to `err`. Returns the exit code.
 */
int solve_command(const std::filesystem::path& file, const SolveOptions& options,
                  std::ostream& out, std::ostream& err);

}  // namespace dds
