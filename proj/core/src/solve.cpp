#include "dds/solve.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>

#include "dds/error.hpp"
#include "dds/problem_file.hpp"

namespace dds {

ExitCode exit_code_for(Status status) noexcept {
  switch (status) {
    case Status::eps_solution: return ExitCode::eps_solution;
    case Status::infeasibility_certificate: return ExitCode::infeasible;
    case Status::unboundedness_certificate: return ExitCode::unbounded;
    case Status::ill_conditioned: return ExitCode::ill_conditioned;
    case Status::iteration_limit:
    case Status::numerical_failure: return ExitCode::numerical_failure;
  }
  return ExitCode::numerical_failure;
}

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string format_trace_row(const TraceRow& row) {
  std::string line = std::to_string(row.iter);
  for (double v : {row.mu, row.tau, row.gap, row.p_feas, row.d_feas, row.proximity}) {
    line += ',';
    line += format_double(v);
  }
  return line;
}

SolveOutcome run_solve(const Problem& problem, const StartData& start,
                       const SolveOptions& options) {
  if (!(options.epsilon > 0.0 && options.epsilon < 1.0)) {
    throw Error{ErrorCode::parse_error, "--eps must lie in (0, 1)"};
  }
  if (options.max_iterations < 0) {
    throw Error{ErrorCode::parse_error, "--max-iters must be nonnegative"};
  }
  FollowerOptions fo;
  fo.epsilon = options.epsilon;
  fo.max_iterations = options.max_iterations;
  fo.strict = options.strict;

  std::ofstream trace;
  TraceSink sink;
  if (options.trace) {
    trace.open(*options.trace, std::ios::binary | std::ios::trunc);
    if (!trace) {
      throw Error{ErrorCode::parse_error,
                  "cannot open trace file '" + options.trace->string() + "'"};
    }
    trace << kTraceHeader << '\n';
    sink = [&trace](const TraceRow& row) { trace << format_trace_row(row) << '\n'; };
  }

  SolveOutcome outcome;
  outcome.result = follow(problem, start, fo, sink);
  const Status status = outcome.result.report.status;
  outcome.report = make_run_report(outcome.result.report, options.epsilon,
                                   static_cast<int>(exit_code_for(status)));
  return outcome;
}

int solve_command(const std::filesystem::path& file, const SolveOptions& options,
                  std::ostream& out, std::ostream& err) {
  SolveOutcome outcome;
  try {
    ProblemFile parsed = read_problem_file(file);
    if (options.xi) parsed.raw.constants.xi = *options.xi;
    if (options.kappa) parsed.raw.constants.kappa = *options.kappa;
    const LoadedProblem loaded = load_problem(std::move(parsed));
    outcome = run_solve(loaded.problem, loaded.start, options);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return static_cast<int>(ExitCode::input_error);
  }
  out << serialize_report(outcome.report) << '\n';
  return outcome.report.exit_code;
}

}  // namespace dds
