#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dds/problem.hpp"
#include "dds/status.hpp"

namespace dds {

/// Residuals of the central-path system at parameter μ. Interiority of
/// A x + z⁰/τ is a domain condition, not a residual.
struct Residuals {
  Vector r_dual;  // Aᵀy - Aᵀy⁰ + (τ-1)c
  Vector r_cent;  // y - (μ/τ) Φ'(A x + z⁰/τ)
  double r_gap = 0.0;  // <c,x> + <y, u>/τ + ϑξμ/τ² + y_τ0/τ

  /// Max of the three blocks, each divided by the magnitude of its terms.
  double scaled_norm = 0.0;
};

Residuals residuals(const Problem& problem, const StartData& start, const Point& p,
                    double mu);

/// Full Jacobian of (r_dual, r_cent, r_gap) in (x, τ, y), size n+m+1.
Matrix path_jacobian(const Problem& problem, const StartData& start, const Point& p,
                     double mu);

/// Step in (x, τ, y).
struct Direction {
  Vector dx;
  double dtau = 0.0;
  Vector dy;
};

/// Newton direction for the system at μ, solved by eliminating dy.
Direction newton_direction(const Problem& problem, const StartData& start,
                           const Point& p, double mu);

/// Tangent of the central path with respect to ln μ.
Direction tangent_direction(const Problem& problem, const StartData& start,
                            const Point& p, double mu);

struct FollowerOptions {
  double epsilon = 1e-8;
  int max_iterations = 500;
  /// Predictor may move out to this multiple of κ.
  double predictor_radius = 2.0;
  /// Corrector stops once proximity <= this multiple of κ.
  double corrector_target = 0.5;
  double fraction_to_boundary = 0.99;
  int max_corrector_steps = 50;
  /// Largest ln-μ step tried by the predictor before halving.
  double max_predictor_step = 10.0;
  /// Attempt exact certificates whenever a weak trigger fires.
  bool strict = false;
  /// Iterations to keep trying the strict projection after the first weak
  /// trigger before reporting the ε-certificate instead.
  int strict_grace_iterations = 60;
  /// Overrides 1/(ϑ ε³).
  std::optional<double> mu_cap;
};

/// Damped Newton on residuals(·, μ) until proximity <= κ/2 and the residual
/// is at roundoff. Throws Error{corrector_stall} after max_corrector_steps.
Iterate corrector_step(const Problem& problem, const StartData& start, const Point& p,
                       double mu, const FollowerOptions& options = {});

struct PredictorResult {
  Iterate iterate;
  double mu = 0.0;
  double step = 0.0;  // accepted ln-μ tangent step length
};

/// Tangent step with halving backtracking; result has proximity <= 2κ and
/// μ_new > μ. Throws Error{predictor_stall}.
PredictorResult predictor_step(const Problem& problem, const StartData& start,
                               const Iterate& it, const FollowerOptions& options = {});

struct TraceRow {
  int iter = 0;
  double mu = 0.0;
  double tau = 0.0;
  double gap = 0.0;
  double p_feas = 0.0;
  double d_feas = 0.0;
  double proximity = 0.0;
};

using TraceSink = std::function<void(const TraceRow&)>;
using IterateObserver = std::function<void(const Iterate&)>;

struct FollowResult {
  StatusReport report;
  std::vector<TraceRow> trace;
  Iterate last;
};

/// Least-squares slope of ln μ against iteration index.
double log_mu_slope(const std::vector<TraceRow>& trace);

/**
 * Alternates predictor and corrector from the μ = 1 point, testing the
 * stopping rules at every accepted iterate. Never throws for algorithmic
 * failures: stalls map to Status::numerical_failure and exhausting the
 * iteration budget to Status::iteration_limit.
 */
FollowResult follow(const Problem& problem, const StartData& start,
                    const FollowerOptions& options, const TraceSink& sink = {},
                    const IterateObserver& observer = {});

}  // namespace dds
