#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "dds/problem.hpp"

namespace dds {

/**
 * Contents of a problem file before validation.
 *
 * The file is a JSON document:
 *
 *   {
 *     "n": 1, "m": 1,
 *     "A": [[1.0]],              // m rows of n entries
 *     "c": [1.0],
 *     "atoms": [
 *       {"type": "box", "coords": [1], "bounds": [0, 1]},
 *       {"type": "soc", "coords": [2, 3, 4], "offset": [0, 0, 1]}
 *     ],
 *     "z0": [0.5],               // optional
 *     "constants": {"xi": 2, "kappa": 0.25}   // optional
 *   }
 *
 * Coordinates are 1-based. "bounds" is [l] for halfline_lower, [u] for
 * halfline_upper, [l, u] for box, and absent for soc.
 */
struct ProblemFile {
  RawProblem raw;
  std::optional<Vector> z0;
};

/// Throws Error{parse_error} naming the line (syntax) or field (schema).
ProblemFile parse_problem_text(std::string_view text);

/// Reads and parses a file; unreadable files are parse errors too.
ProblemFile read_problem_file(const std::filesystem::path& path);

struct LoadedProblem {
  Problem problem;
  StartData start;
};

/// Validates the data and builds the start, synthesising z⁰ when absent.
LoadedProblem load_problem(ProblemFile file);

/// read_problem_file followed by load_problem.
LoadedProblem parse_problem_file(const std::filesystem::path& path);

}  // namespace dds
