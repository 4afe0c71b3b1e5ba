#include "dds/status.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

#include "linalg.hpp"

namespace dds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

VerificationCheck check_at_most(std::string name, double value, double threshold) {
  return VerificationCheck{std::move(name), value, threshold, value <= threshold};
}

VerificationCheck check_positive(std::string name, double value) {
  return VerificationCheck{std::move(name), value, 0.0, value > 0.0};
}

VerificationCheck check_nonnegative(std::string name, double value) {
  return VerificationCheck{std::move(name), value, 0.0, value >= 0.0};
}

// Stop parameters of an explicit pair (x, dual) with primal shift.
StopParams pair_stop_params(const Problem& problem, const Vector& x, const Vector& dual,
                            const Vector& shift) {
  StopParams sp;
  const double cx = problem.c().dot(x);
  const ExtendedReal support = problem.support(dual);
  if (support.is_finite()) {
    const double d = support.value();
    sp.gap = std::abs(cx + d) / (1.0 + std::abs(cx) + std::abs(d));
  } else {
    sp.gap = 1.0;
  }
  sp.p_feas = shift.norm();
  sp.d_feas = (problem.A().transpose() * dual + problem.c()).norm() / (1.0 + problem.c().norm());
  return sp;
}

void verify_infeasibility(const Problem& problem, const Certificate& cert,
                          VerificationReport& report) {
  const Vector& w = cert.dual;
  const Vector atw = problem.A().transpose() * w;
  const ExtendedReal support = problem.support(w);
  const double margin = problem.domain().interior_margin(w, Side::conjugate);
  report.checks.push_back(check_nonnegative("dual_cone_margin", margin));
  if (cert.strict) {
    report.checks.push_back(
        check_at_most("kernel_residual_inf", atw.lpNorm<Eigen::Infinity>(), 1e-8));
    report.checks.push_back(
        check_at_most("support_value", support.to_double(), -1.0 + 1e-8));
  } else {
    report.checks.push_back(check_at_most("kernel_residual", atw.norm(), cert.epsilon));
    report.checks.push_back(
        VerificationCheck{"support_negative", support.to_double(), 0.0,
                          support.is_finite() && support.value() < 0.0});
  }
}

void verify_unboundedness(const Problem& problem, const Certificate& cert,
                          VerificationReport& report) {
  Vector image = problem.A() * cert.primal;
  if (cert.shift.size() == image.size()) image += cert.shift;
  report.checks.push_back(check_positive(
      "primal_domain_margin", problem.domain().interior_margin(image, Side::primal)));
  report.checks.push_back(
      check_at_most("objective", problem.c().dot(cert.primal), -1.0 / cert.epsilon));
}

void verify_pair(const Problem& problem, const Certificate& cert,
                 VerificationReport& report) {
  const Vector image = problem.A() * cert.primal + cert.shift;
  report.checks.push_back(check_positive(
      "primal_domain_margin", problem.domain().interior_margin(image, Side::primal)));
  report.checks.push_back(check_positive(
      "dual_cone_margin", problem.domain().interior_margin(cert.dual, Side::conjugate)));
  const StopParams sp = pair_stop_params(problem, cert.primal, cert.dual, cert.shift);
  if (cert.kind == CertificateKind::optimal_pair) {
    report.checks.push_back(check_at_most("gap", sp.gap, cert.epsilon));
    report.checks.push_back(check_at_most("p_feas", sp.p_feas, cert.epsilon));
    report.checks.push_back(check_at_most("d_feas", sp.d_feas, cert.epsilon));
  } else {
    // Only approximate feasibility is claimed; the residuals are reported.
    report.checks.push_back(check_at_most("p_feas", sp.p_feas, kInf));
    report.checks.push_back(check_at_most("d_feas", sp.d_feas, kInf));
    report.checks.push_back(VerificationCheck{
        "support_finite", problem.support(cert.dual).to_double(), kInf,
        problem.support(cert.dual).is_finite()});
  }
}

Certificate pair_certificate(CertificateKind kind, const StartData& start, const Point& p,
                             double epsilon) {
  Certificate cert;
  cert.kind = kind;
  cert.epsilon = epsilon;
  cert.primal = p.x;
  cert.dual = p.y / p.tau;
  cert.shift = start.z0 / p.tau;
  return cert;
}

StatusReport base_report(Status status, const Problem& problem, const Point& p) {
  StatusReport report;
  report.status = status;
  report.x = p.x;
  report.y_scaled = p.y / p.tau;
  const ExtendedReal support = problem.support(p.y);
  if (support.is_finite()) report.objective_estimate = -support.value() / p.tau;
  return report;
}

// Attaches a verified certificate; nullopt if verification fails.
std::optional<StatusReport> emit(StatusReport report, const Problem& problem,
                                 Certificate cert) {
  report.verification = verify_certificate(problem, cert);
  if (!report.verification.passed()) return std::nullopt;
  report.certificate = std::move(cert);
  return report;
}

}  // namespace

StopParams stop_params(const Problem& problem, const StartData& start, const Point& p) {
  return pair_stop_params(problem, p.x, p.y / p.tau, start.z0 / p.tau);
}

std::string_view to_string(Status status) noexcept {
  switch (status) {
    case Status::eps_solution: return "EpsSolution";
    case Status::infeasibility_certificate: return "InfeasibilityCertificate";
    case Status::unboundedness_certificate: return "UnboundednessCertificate";
    case Status::ill_conditioned: return "IllConditioned";
    case Status::iteration_limit: return "IterationLimit";
    case Status::numerical_failure: return "NumericalFailure";
  }
  return "Unknown";
}

std::string_view to_string(CertificateKind kind) noexcept {
  switch (kind) {
    case CertificateKind::infeasibility: return "infeasibility";
    case CertificateKind::unboundedness: return "unboundedness";
    case CertificateKind::optimal_pair: return "optimal_pair";
    case CertificateKind::eps_feasible_pair: return "eps_feasible_pair";
  }
  return "unknown";
}

std::string_view to_string(ProjectionFailure failure) noexcept {
  switch (failure) {
    case ProjectionFailure::outside_cone: return "ProjectionOutsideCone";
    case ProjectionFailure::nonnegative_support: return "NonnegativeSupport";
    case ProjectionFailure::empty_target: return "EmptyTarget";
    case ProjectionFailure::outside_domain: return "ProjectionOutsideDomain";
    case ProjectionFailure::not_applicable: return "NotApplicable";
  }
  return "Unknown";
}

bool VerificationReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::vector<std::string> VerificationReport::failures() const {
  std::vector<std::string> names;
  for (const auto& c : checks) {
    if (!c.passed) names.push_back(c.name);
  }
  return names;
}

VerificationReport verify_certificate(const Problem& problem, const Certificate& cert) {
  VerificationReport report;
  switch (cert.kind) {
    case CertificateKind::infeasibility:
      if (cert.dual.size() != problem.m()) {
        report.checks.push_back({"dual_length", static_cast<double>(cert.dual.size()),
                                 static_cast<double>(problem.m()), false});
        break;
      }
      verify_infeasibility(problem, cert, report);
      break;
    case CertificateKind::unboundedness:
      if (cert.primal.size() != problem.n()) {
        report.checks.push_back({"primal_length", static_cast<double>(cert.primal.size()),
                                 static_cast<double>(problem.n()), false});
        break;
      }
      verify_unboundedness(problem, cert, report);
      break;
    case CertificateKind::optimal_pair:
    case CertificateKind::eps_feasible_pair:
      if (cert.primal.size() != problem.n() || cert.dual.size() != problem.m() ||
          cert.shift.size() != problem.m()) {
        report.checks.push_back({"pair_lengths", 0.0, 0.0, false});
        break;
      }
      verify_pair(problem, cert, report);
      break;
  }
  return report;
}

double mu_cap(const Problem& problem, double epsilon) {
  return 1.0 / (problem.theta() * epsilon * epsilon * epsilon);
}

std::optional<StatusReport> check_status(const Problem& problem, const StartData& start,
                                         const Iterate& it, double epsilon) {
  return check_status(problem, start, it, epsilon, mu_cap(problem, epsilon));
}

std::optional<StatusReport> check_status(const Problem& problem, const StartData& start,
                                         const Iterate& it, double epsilon, double cap) {
  const StopParams sp = stop_params(problem, start, it);
  if (sp.max() <= epsilon) {
    auto report = emit(base_report(Status::eps_solution, problem, it), problem,
                       pair_certificate(CertificateKind::optimal_pair, start, it, epsilon));
    if (report) {
      report->message = "ε-solution";
      return report;
    }
  }

  const double scale = it.tau / it.mu;
  const ExtendedReal support = problem.support(it.y);
  if (support.is_finite() && scale * support.value() < 0.0 &&
      scale * (problem.A().transpose() * it.y).norm() <= epsilon) {
    Certificate cert;
    cert.kind = CertificateKind::infeasibility;
    cert.epsilon = epsilon;
    cert.dual = scale * it.y;
    auto report = emit(base_report(Status::infeasibility_certificate, problem, it), problem,
                       std::move(cert));
    if (report) {
      report->message = "ε-certificate of infeasibility";
      return report;
    }
  }

  if (problem.c().dot(it.x) <= -1.0 / epsilon) {
    Certificate cert;
    cert.kind = CertificateKind::unboundedness;
    cert.epsilon = epsilon;
    cert.primal = it.x;
    cert.shift = start.z0 / it.tau;
    auto report = emit(base_report(Status::unboundedness_certificate, problem, it), problem,
                       std::move(cert));
    if (report) {
      report->message = "ε-certificate of unboundedness";
      return report;
    }
  }

  if (it.mu >= cap) {
    auto report =
        emit(base_report(Status::ill_conditioned, problem, it), problem,
             pair_certificate(CertificateKind::eps_feasible_pair, start, it, epsilon));
    if (!report) {
      // The pair failed its membership checks; still terminal, but unverified.
      report = base_report(Status::ill_conditioned, problem, it);
      report->verification = verify_certificate(
          problem, pair_certificate(CertificateKind::eps_feasible_pair, start, it, epsilon));
      report->message = "mu cap reached; ε-feasible pair failed verification";
      return report;
    }
    report->message = "mu cap reached; ε-feasible pair";
    return report;
  }
  return std::nullopt;
}

bool is_eps_infeasibility_certificate(const Problem& problem, const StartData& start,
                                      const Point& p, double epsilon) {
  const double mu = mu_of(problem, start, p);
  if (!(mu > 0.0) || !(p.tau > 0.0)) return false;
  const double scale = p.tau / mu;
  const ExtendedReal support = problem.support(p.y);
  if (support.is_infinite()) return false;
  return scale * support.value() < -1.0 &&
         scale * (problem.A().transpose() * p.y).norm() <= epsilon;
}

bool is_eps_unboundedness_certificate(const Problem& problem, const Point& p,
                                      double epsilon) {
  return problem.c().dot(p.x) < -1.0 / epsilon;
}

CertificateAttempt strict_infeasibility_certificate(const Problem& problem,
                                                    const StartData& start,
                                                    const Point& p) {
  const Domain& domain = problem.domain();
  const double mu = mu_of(problem, start, p);
  if (!(mu > 0.0) || !(p.tau > 0.0)) return ProjectionFailure::not_applicable;
  const Vector s = (p.tau / mu) * p.y;
  if (!domain.is_interior(s, Side::conjugate)) return ProjectionFailure::not_applicable;

  const Matrix H = domain.hessian(s, Side::conjugate);
  const Matrix& A = problem.A();
  auto w = detail::weighted_projection(H, s, A, Vector::Zero(problem.n()));
  if (!w) return ProjectionFailure::empty_target;

  const double bound =
      -kInfeasibilityProjectionFactor * p.tau * problem.xi() * problem.theta();
  if (w->dot(start.z0) > bound) {
    Matrix B(problem.m(), problem.n() + 1);
    B << A, start.z0;
    Vector b = Vector::Zero(problem.n() + 1);
    b(problem.n()) = bound;
    w = detail::weighted_projection(H, s, B, b);
    if (!w) return ProjectionFailure::empty_target;
  }

  // Remove the roundoff component outside ker Aᵀ.
  const Matrix gram = A.transpose() * A;
  *w -= A * gram.ldlt().solve(A.transpose() * *w);

  if (!domain.is_interior(*w, Side::conjugate)) return ProjectionFailure::outside_cone;
  const ExtendedReal support = problem.support(*w);
  if (support.is_infinite() || !(support.value() < 0.0)) {
    return ProjectionFailure::nonnegative_support;
  }

  Certificate cert;
  cert.kind = CertificateKind::infeasibility;
  cert.strict = true;
  cert.dual = *w / -support.value();
  if (!verify_certificate(problem, cert).passed()) return ProjectionFailure::outside_cone;
  return cert;
}

CertificateAttempt strict_unboundedness_certificate(const Problem& problem,
                                                    const StartData& start,
                                                    const Point& p, double epsilon) {
  const Vector& c = problem.c();
  const double target = -1.0 / epsilon;
  if (!(p.tau > 0.0) || !(c.dot(p.x) <= target)) return ProjectionFailure::not_applicable;
  const Vector u = shifted_image(problem, start, p);
  if (!problem.domain().is_interior(u, Side::primal)) {
    return ProjectionFailure::not_applicable;
  }
  const Matrix& A = problem.A();
  const Matrix H = problem.domain().hessian(u, Side::primal);
  const Matrix normal = A.transpose() * H * A;
  const Vector rhs = A.transpose() * (H * u);

  auto x_hat = detail::solve_square(normal, rhs);
  if (!x_hat) return ProjectionFailure::empty_target;
  if (c.dot(*x_hat) > target) {
    const Index n = problem.n();
    Matrix kkt = Matrix::Zero(n + 1, n + 1);
    kkt.topLeftCorner(n, n) = normal;
    kkt.topRightCorner(n, 1) = c;
    kkt.bottomLeftCorner(1, n) = c.transpose();
    Vector kkt_rhs(n + 1);
    kkt_rhs << rhs, target;
    const auto sol = detail::solve_square(kkt, kkt_rhs);
    if (!sol) return ProjectionFailure::empty_target;
    x_hat = sol->head(n);
    // Roundoff may leave <c,x̂> a hair above the target; move along c.
    const double excess = c.dot(*x_hat) - target;
    if (excess > 0.0) *x_hat -= (excess / c.squaredNorm()) * c;
  }
  if (!problem.domain().is_interior(A * *x_hat, Side::primal)) {
    return ProjectionFailure::outside_domain;
  }

  Certificate cert;
  cert.kind = CertificateKind::unboundedness;
  cert.strict = true;
  cert.epsilon = epsilon;
  cert.primal = *x_hat;
  cert.shift = Vector::Zero(problem.m());
  if (!verify_certificate(problem, cert).passed()) return ProjectionFailure::outside_domain;
  return cert;
}

}  // namespace dds
