#pragma once

// The four reference instances, built directly in code so that tests do not
// depend on the problem-file parser.

#include "dds/problem.hpp"

namespace dds::testing {

// min z over z ∈ [0, 1]; optimum 0 at z = 0.
inline Problem inst_box() {
  RawProblem raw;
  raw.A = Matrix::Constant(1, 1, 1.0);
  raw.c = Vector::Constant(1, 1.0);
  raw.atoms = {BarrierAtom::box({0}, 0.0, 1.0)};
  return validate_problem(std::move(raw));
}

// x >= 0 and -x >= 1: empty.
inline Problem inst_inf() {
  RawProblem raw;
  raw.A.resize(2, 1);
  raw.A << 1.0, -1.0;
  raw.c = Vector::Constant(1, 1.0);
  raw.atoms = {BarrierAtom::halfline_lower({0}, 0.0), BarrierAtom::halfline_lower({1}, 1.0)};
  return validate_problem(std::move(raw));
}

inline Vector inst_inf_z0() { return Vector{{1.0, 2.0}}; }

// min -x over x >= 0.
inline Problem inst_unb() {
  RawProblem raw;
  raw.A = Matrix::Constant(1, 1, 1.0);
  raw.c = Vector::Constant(1, -1.0);
  raw.atoms = {BarrierAtom::halfline_lower({0}, 0.0)};
  return validate_problem(std::move(raw));
}

// min x2 - x1 subject to x2 >= ‖(x1, 1)‖; infimum 0, not attained.
inline Problem inst_soc() {
  RawProblem raw;
  raw.A.resize(3, 2);
  raw.A << 0.0, 1.0,
           1.0, 0.0,
           0.0, 0.0;
  raw.c = Vector{{-1.0, 1.0}};
  raw.atoms = {BarrierAtom::soc({0, 1, 2}, Vector{{0.0, 0.0, 1.0}})};
  return validate_problem(std::move(raw));
}

}  // namespace dds::testing
