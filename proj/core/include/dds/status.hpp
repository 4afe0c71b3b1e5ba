#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dds/problem.hpp"

namespace dds {

/// Scale-free stopping measures of the current point.
struct StopParams {
  double gap = 1.0;     // |<c,x> + δ*/τ| / (1 + |<c,x>| + |δ*/τ|), 1 if δ* = +inf
  double p_feas = 0.0;  // ‖z⁰‖ / τ
  double d_feas = 0.0;  // ‖Aᵀy/τ + c‖ / (1 + ‖c‖)

  double max() const { return std::max(gap, std::max(p_feas, d_feas)); }
};

StopParams stop_params(const Problem& problem, const StartData& start, const Point& p);

enum class Status {
  eps_solution,
  infeasibility_certificate,
  unboundedness_certificate,
  ill_conditioned,
  iteration_limit,
  numerical_failure,
};

std::string_view to_string(Status status) noexcept;

enum class CertificateKind { infeasibility, unboundedness, optimal_pair, eps_feasible_pair };

std::string_view to_string(CertificateKind kind) noexcept;

/**
 * Certificate payload. Which vectors are populated depends on the kind:
 *   infeasibility      dual = y with Aᵀy ≈ 0, δ*(y|D) < 0
 *   unboundedness      primal = x with <c,x> <= -1/ε; shift is zero for
 *                      strict certificates, z⁰/τ for ε-certificates
 *   optimal_pair       primal = x, dual = y/τ, shift = z⁰/τ
 *   eps_feasible_pair  primal = x, dual = y/τ, shift = z⁰/τ
 */
struct Certificate {
  CertificateKind kind = CertificateKind::infeasibility;
  bool strict = false;
  double epsilon = 0.0;
  Vector primal;
  Vector dual;
  Vector shift;
};

struct VerificationCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;

  bool passed() const;
  std::vector<std::string> failures() const;
};

/// Re-derives every claim of the certificate from problem data alone.
VerificationReport verify_certificate(const Problem& problem, const Certificate& cert);

struct Diagnostics {
  double mu = 0.0;
  double tau = 0.0;
  double proximity = 0.0;
  int iterations = 0;
  double log_mu_slope = 0.0;
  int invariant_violations = 0;
  StopParams stop;
};

struct StatusReport {
  Status status = Status::numerical_failure;
  Vector x;
  Vector y_scaled;  // y / τ
  std::optional<Certificate> certificate;
  std::optional<double> objective_estimate;  // -δ*(y|D)/τ when finite
  Diagnostics diagnostics;
  VerificationReport verification;
  std::string message;
};

/// Default μ cap 1/(ϑ ε³).
double mu_cap(const Problem& problem, double epsilon);

/**
 * Stopping test for a κ-close point, in precedence order: ε-solution,
 * infeasibility (stop-6 form), unboundedness, μ cap. Returns nullopt when
 * none fires. Every returned certificate has passed verify_certificate.
 */
std::optional<StatusReport> check_status(const Problem& problem, const StartData& start,
                                         const Iterate& it, double epsilon);

/// Same, with an explicit μ cap instead of 1/(ϑ ε³).
std::optional<StatusReport> check_status(const Problem& problem, const StartData& start,
                                         const Iterate& it, double epsilon,
                                         double cap);

/// ε-certificate of infeasibility in the strict-threshold form:
/// (τ/μ) δ*(y|D) < -1 and (τ/μ) ‖Aᵀy‖ <= ε.
bool is_eps_infeasibility_certificate(const Problem& problem, const StartData& start,
                                      const Point& p, double epsilon);

/// ε-certificate of unboundedness: <c,x> < -1/ε.
bool is_eps_unboundedness_certificate(const Problem& problem, const Point& p,
                                      double epsilon);

enum class ProjectionFailure {
  outside_cone,         // projected vector is not interior to D*
  nonnegative_support,  // δ*(w|D) >= 0, no separation
  empty_target,         // the affine target set is empty
  outside_domain,       // A x̂ is not interior to D
  not_applicable,       // precondition not met (e.g. <c,x> > -1/ε)
};

std::string_view to_string(ProjectionFailure failure) noexcept;

using CertificateAttempt = std::variant<Certificate, ProjectionFailure>;

/// Factor of τξϑ bounding <w, z⁰> in the infeasibility projection.
inline constexpr double kInfeasibilityProjectionFactor = 0.9;

/**
 * Projects s = (τ/μ) y onto {w : Aᵀw = 0, <w, z⁰> <= -0.9 τξϑ} in the norm
 * of Φ*''(s). On success the certificate is rescaled so δ*(w|D) = -1.
 */
CertificateAttempt strict_infeasibility_certificate(const Problem& problem,
                                                    const StartData& start,
                                                    const Point& p);

/**
 * Projects u = A x + z⁰/τ onto {A x̂ : <c, x̂> <= -1/ε} in the norm of Φ''(u).
 * Requires the weak trigger <c,x> <= -1/ε.
 */
CertificateAttempt strict_unboundedness_certificate(const Problem& problem,
                                                    const StartData& start,
                                                    const Point& p, double epsilon);

}  // namespace dds
