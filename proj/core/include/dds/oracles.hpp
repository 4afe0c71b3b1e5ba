#pragma once

#include <optional>

#include "dds/problem.hpp"

namespace dds {

/**
 * Brute-force analysis quantities for tiny instances (n <= 2, m <= 4).
 *
 * Nothing here touches the path follower. Searches run on a grid over
 * [lower, upper] which is repeatedly shrunk around the best point.
 */
struct OracleInstance {
  const Problem* problem = nullptr;
  Vector lower;  // bounding box for x, length n
  Vector upper;
  int resolution = 41;  // grid points per axis and pass
  int passes = 60;
};

/// Throws bad_constants unless the instance respects the size limits.
void validate_oracle_instance(const OracleInstance& instance);

/// Analytic centre x̄(1) = argmin Φ(Ax) + <c,x> and its dual companions.
struct AnalyticCentre {
  Vector x;
  Vector y;           // Φ'(A x̄)
  double y_tau = 0.0; // -ξϑ - <ȳ, A x̄>
  int iterations = 0;
};

/**
 * Damped Newton (step 1/(1+λ)) to gradient norm 1e-10, started from x_start
 * or the least-squares preimage of the default interior point. Throws
 * Error{newton_divergence} when the iterates escape or stall, which happens
 * when either side lacks strictly feasible points.
 */
AnalyticCentre compute_xbar1(const Problem& problem,
                             const std::optional<Vector>& x_start = std::nullopt);

/// The three conditions defining σ_f, evaluated at one α ∈ [0, 1).
bool sigma_f_admissible(const Problem& problem, const StartData& start,
                        const AnalyticCentre& centre, double alpha);

/// σ_f by bisection on α to bracket width 1e-10.
double oracle_sigma_f(const Problem& problem, const StartData& start,
                      const AnalyticCentre& centre);

/// Largest smallest-atom-margin of A x + shift over the box (concave in x).
double max_domain_margin(const OracleInstance& instance, const Vector& shift);

/// t_p(z⁰) by bisection on t over [1, 1e6]; +inf when feasible at 1e6.
double oracle_tp(const OracleInstance& instance, const Vector& z0);

/// Euclidean distance from z to D, summed over atoms in quadrature.
double distance_to_domain(const Domain& domain, const Vector& z);

/// σ_p = min over the box of dist(A x, D).
double oracle_sigma_p(const OracleInstance& instance);

}  // namespace dds
