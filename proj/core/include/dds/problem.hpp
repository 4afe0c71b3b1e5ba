#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dds/barrier.hpp"
#include "dds/extended_real.hpp"

namespace dds {

/// Absolute constants of the central path: ξ > 1 and κ with ξ - 1 - κ > 0.
struct PathConstants {
  double xi = 2.0;
  double kappa = 0.25;

  /// Lower bound on τ for κ-close points with μ >= 1: (ξ - 1 - κ) / (2ξ).
  double tau_lower_bound() const { return (xi - 1.0 - kappa) / (2.0 * xi); }
};

/// Unvalidated problem data: inf { <c, x> : A x ∈ D }.
struct RawProblem {
  Matrix A;
  Vector c;
  std::vector<BarrierAtom> atoms;
  PathConstants constants;
};

class Problem {
 public:
  const Matrix& A() const { return A_; }
  const Vector& c() const { return c_; }
  const Domain& domain() const { return domain_; }
  const PathConstants& constants() const { return constants_; }
  double theta() const { return domain_.theta(); }
  double xi() const { return constants_.xi; }
  double kappa() const { return constants_.kappa; }
  Index n() const { return A_.cols(); }
  Index m() const { return A_.rows(); }

  ExtendedReal support(const Vector& y) const { return domain_.support(y); }

 private:
  friend Problem validate_problem(RawProblem raw);
  Problem(Matrix A, Vector c, Domain domain, PathConstants constants)
      : A_{std::move(A)}, c_{std::move(c)}, domain_{std::move(domain)},
        constants_{constants} {}

  Matrix A_;
  Vector c_;
  Domain domain_;
  PathConstants constants_;
};

/**
 * Checks the standing assumptions and builds a Problem.
 *
 * Throws Error with code dimension_mismatch, atom_coverage, bad_atom,
 * bad_constants (ξ <= 1, κ <= 0 or ξ - 1 - κ <= 0) or rank_deficient
 * (kernel(A) != {0}, judged by column-pivoted QR with threshold 1e-10·‖A‖).
 */
Problem validate_problem(RawProblem raw);

/// Starting data: z⁰ ∈ int D, y⁰ = Φ'(z⁰), y_τ0 = -<y⁰, z⁰> - ξϑ.
struct StartData {
  Vector z0;
  Vector y0;
  double y_tau0 = 0.0;
};

/// Builds StartData from a caller-chosen z⁰; throws domain_violation unless
/// z⁰ is strictly interior.
StartData make_start(const Problem& problem, Vector z0);

/// Per-atom canonical interior point (l+1, u-1, midpoint, (2,0,..,0)).
StartData default_z0(const Problem& problem);

/// A point (x, τ, y) of the extended space.
struct Point {
  Vector x;
  double tau = 1.0;
  Vector y;
};

/// Accepted point together with its cached μ and proximity.
struct Iterate : Point {
  double mu = 1.0;
  double proximity = 0.0;
};

/// The on-path point at μ = 1: (0, 1, y⁰).
Point initial_point(const Problem& problem, const StartData& start);

/// u = A x + z⁰ / τ.
Vector shifted_image(const Problem& problem, const StartData& start, const Point& p);

/// μ(x, τ, y) from the third form (only <y, z⁰> and <Aᵀy⁰ + c, x>).
double mu_of(const Problem& problem, const StartData& start, const Point& p);

/// All three algebraic forms of μ; they agree on Q_DD.
std::array<double, 3> mu_forms(const Problem& problem, const StartData& start,
                               const Point& p);

/// Outcome of a Q_DD membership test.
struct QddCheck {
  double primal_margin = 0.0;  // of A x + z⁰/τ in D
  double dual_margin = 0.0;    // of y in D*
  double dual_residual = 0.0;  // ‖Aᵀy - Aᵀy⁰ + (τ-1)c‖
  double tolerance = 0.0;
  bool tau_positive = false;

  bool ok() const {
    return tau_positive && primal_margin > 0.0 && dual_margin > 0.0 &&
           dual_residual <= tolerance;
  }
};

/**
 * Q_DD membership with the dual equality judged at 1e-9·(1+‖c‖), widened by
 * the roundoff floor 1e-13·(‖Aᵀ‖‖y‖) once y grows large.
 */
QddCheck check_qdd(const Problem& problem, const StartData& start, const Point& p);

/**
 * κ-proximity: ‖u - Φ*'(s)‖ in the [Φ*''(s)]⁻¹ norm with s = (τ/μ) y.
 *
 * Throws domain_violation when μ <= 0 or s ∉ int D*, and when the point is
 * not in Q_DD.
 */
double proximity(const Problem& problem, const StartData& start, const Point& p);

/// Same measure without the Q_DD precondition, given μ explicitly.
double proximity_at(const Problem& problem, const StartData& start, const Point& p,
                    double mu);

/// δ*(y | D), summed over atoms.
ExtendedReal support_function(const Problem& problem, const Vector& y);

/// The two sides of the duality-gap sandwich for κ-close points and the
/// actual value <c, x> + δ*(y|D)/τ.
struct GapBounds {
  double lower = 0.0;
  double upper = 0.0;
  ExtendedReal actual;

  /// lower - slack <= actual <= upper + slack (vacuous when actual is +inf).
  bool holds(double slack) const;
};

GapBounds gap_bounds(const Problem& problem, const StartData& start, const Point& p);

/// Same, with μ supplied by the caller.
GapBounds gap_bounds_at(const Problem& problem, const StartData& start,
                        const Point& p, double mu);

}  // namespace dds
