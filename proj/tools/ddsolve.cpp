// ddsolve: classify and solve a convex problem given in domain-driven form.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dds/solve.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Infeasible-start primal-dual path following for domain-driven problems"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Solve a problem file and print a JSON report");
  std::string file;
  dds::SolveOptions options;
  double xi = 0.0;
  double kappa = 0.0;
  std::string trace;
  solve->add_option("file", file, "Problem file (JSON)")->required();
  solve->add_option("--eps", options.epsilon, "Target accuracy in (0, 1)")
      ->capture_default_str();
  auto* xi_opt = solve->add_option("--xi", xi, "Path constant xi > 1");
  auto* kappa_opt = solve->add_option("--kappa", kappa, "Proximity radius kappa");
  solve->add_option("--max-iters", options.max_iterations, "Iteration limit")
      ->capture_default_str();
  auto* trace_opt = solve->add_option("--trace", trace, "Write the iteration trace as CSV");
  solve->add_flag("--strict", options.strict,
                  "Project weak certificates onto exact ones when possible");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(dds::ExitCode::input_error);
  }
  if (*xi_opt) options.xi = xi;
  if (*kappa_opt) options.kappa = kappa;
  if (*trace_opt) options.trace = trace;
  return dds::solve_command(file, options, std::cout, std::cerr);
}
