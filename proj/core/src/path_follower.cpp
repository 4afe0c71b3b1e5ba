#include "dds/path_follower.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dds/error.hpp"
#include "linalg.hpp"

namespace dds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pieces of the central-path Jacobian shared by the Newton and tangent
// solves. The r_cent rows have identity coefficient in dy:
//   dy = rhs_cent - cent_x dx - cent_tau dτ.
struct Linearization {
  Matrix cent_x;    // ∂r_cent/∂x = -(μ/τ) H A
  Vector cent_tau;  // ∂r_cent/∂τ = (μ/τ²) g + (μ/τ³) H z⁰
  Vector gap_x;     // ∂r_gap/∂x = c + Aᵀy/τ
  double gap_tau = 0.0;
  Vector gap_y;     // ∂r_gap/∂y = u/τ
};

Linearization linearize(const Problem& problem, const StartData& start, const Point& p,
                        double mu) {
  const Matrix& A = problem.A();
  const Vector u = shifted_image(problem, start, p);
  const Vector g = problem.domain().gradient(u, Side::primal);
  const Matrix H = problem.domain().hessian(u, Side::primal);
  const double tau = p.tau;
  const Vector du_dtau = -start.z0 / (tau * tau);

  Linearization lin;
  lin.cent_x = -(mu / tau) * (H * A);
  lin.cent_tau = (mu / (tau * tau)) * g - (mu / tau) * (H * du_dtau);
  lin.gap_x = problem.c() + A.transpose() * p.y / tau;
  const double theta_xi = problem.theta() * problem.xi();
  lin.gap_tau = p.y.dot(du_dtau) / tau - p.y.dot(u) / (tau * tau) -
                2.0 * theta_xi * mu / (tau * tau * tau) - start.y_tau0 / (tau * tau);
  lin.gap_y = u / tau;
  return lin;
}

// Solves J d = -(f_dual, f_cent, f_gap) by eliminating dy.
Direction solve_eliminated(const Problem& problem, const Linearization& lin,
                           const Vector& f_dual, const Vector& f_cent, double f_gap) {
  const Matrix& A = problem.A();
  const Index n = problem.n();
  // dy = -f_cent - cent_x dx - cent_tau dτ
  Matrix reduced(n + 1, n + 1);
  Vector rhs(n + 1);
  reduced.topLeftCorner(n, n) = -A.transpose() * lin.cent_x;
  reduced.topRightCorner(n, 1) = problem.c() - A.transpose() * lin.cent_tau;
  rhs.head(n) = -f_dual + A.transpose() * f_cent;

  reduced.bottomLeftCorner(1, n) =
      (lin.gap_x - lin.cent_x.transpose() * lin.gap_y).transpose();
  reduced(n, n) = lin.gap_tau - lin.gap_y.dot(lin.cent_tau);
  rhs(n) = -f_gap + lin.gap_y.dot(f_cent);

  const auto sol = detail::solve_square(reduced, rhs);
  if (!sol) {
    throw Error{ErrorCode::factorization_failure, "central-path Newton system is singular"};
  }
  Direction d;
  d.dx = sol->head(n);
  d.dtau = (*sol)(n);
  d.dy = -f_cent - lin.cent_x * d.dx - lin.cent_tau * d.dtau;
  return d;
}

Point advance(const Point& p, const Direction& d, double alpha) {
  return Point{p.x + alpha * d.dx, p.tau + alpha * d.dtau, p.y + alpha * d.dy};
}

// Fraction-to-boundary limit along d: τ > 0, y ∈ int D*, and the
// linearised image u + α du ∈ int D.
double boundary_step(const Problem& problem, const StartData& start, const Point& p,
                     const Direction& d) {
  double step = kInf;
  if (d.dtau < 0.0) step = std::min(step, -p.tau / d.dtau);
  step = std::min(step, problem.domain().max_step(p.y, d.dy, Side::conjugate));
  const Vector u = shifted_image(problem, start, p);
  const Vector du = problem.A() * d.dx - start.z0 * (d.dtau / (p.tau * p.tau));
  step = std::min(step, problem.domain().max_step(u, du, Side::primal));
  return step;
}

// Proximity of a trial point, or +inf if it left the domain.
double trial_proximity(const Problem& problem, const StartData& start, const Point& p,
                       double mu) {
  if (!(p.tau > 0.0) || !(mu > 0.0)) return kInf;
  if (!problem.domain().is_interior(shifted_image(problem, start, p), Side::primal)) {
    return kInf;
  }
  if (!problem.domain().is_interior(p.y, Side::conjugate)) return kInf;
  try {
    return proximity_at(problem, start, p, mu);
  } catch (const Error&) {
    return kInf;
  }
}

Iterate make_iterate(const Problem& problem, const StartData& start, Point p) {
  Iterate it;
  it.mu = mu_of(problem, start, p);
  it.proximity = trial_proximity(problem, start, p, it.mu);
  static_cast<Point&>(it) = std::move(p);
  return it;
}

}  // namespace

Residuals residuals(const Problem& problem, const StartData& start, const Point& p,
                    double mu) {
  if (!(p.tau > 0.0)) {
    throw Error{ErrorCode::domain_violation, "residuals need tau > 0"};
  }
  const Matrix& A = problem.A();
  const Vector u = shifted_image(problem, start, p);
  const Vector g = problem.domain().gradient(u, Side::primal);  // throws if not interior
  const double theta_xi = problem.theta() * problem.xi();
  const double tau = p.tau;

  Residuals r;
  const Vector aty = A.transpose() * p.y;
  const Vector aty0 = A.transpose() * start.y0;
  r.r_dual = aty - aty0 + (tau - 1.0) * problem.c();
  r.r_cent = p.y - (mu / tau) * g;
  const double cx = problem.c().dot(p.x);
  const double yu = p.y.dot(u) / tau;
  const double barrier_term = theta_xi * mu / (tau * tau);
  const double start_term = start.y_tau0 / tau;
  r.r_gap = cx + yu + barrier_term + start_term;

  const double dual_scale =
      1.0 + aty.norm() + aty0.norm() + std::abs(tau - 1.0) * problem.c().norm();
  const double cent_scale = 1.0 + p.y.norm();
  const double gap_scale =
      1.0 + std::abs(cx) + std::abs(yu) + barrier_term + std::abs(start_term);
  r.scaled_norm = std::max({r.r_dual.norm() / dual_scale, r.r_cent.norm() / cent_scale,
                            std::abs(r.r_gap) / gap_scale});
  return r;
}

Matrix path_jacobian(const Problem& problem, const StartData& start, const Point& p,
                     double mu) {
  const Index n = problem.n();
  const Index m = problem.m();
  const Linearization lin = linearize(problem, start, p, mu);
  Matrix J = Matrix::Zero(n + m + 1, n + 1 + m);
  // rows: r_dual (n), r_cent (m), r_gap (1); columns: x (n), τ, y (m)
  J.block(0, n, n, 1) = problem.c();
  J.block(0, n + 1, n, m) = problem.A().transpose();
  J.block(n, 0, m, n) = lin.cent_x;
  J.block(n, n, m, 1) = lin.cent_tau;
  J.block(n, n + 1, m, m) = Matrix::Identity(m, m);
  J.block(n + m, 0, 1, n) = lin.gap_x.transpose();
  J(n + m, n) = lin.gap_tau;
  J.block(n + m, n + 1, 1, m) = lin.gap_y.transpose();
  return J;
}

Direction newton_direction(const Problem& problem, const StartData& start,
                           const Point& p, double mu) {
  const Residuals r = residuals(problem, start, p, mu);
  const Linearization lin = linearize(problem, start, p, mu);
  return solve_eliminated(problem, lin, r.r_dual, r.r_cent, r.r_gap);
}

Direction tangent_direction(const Problem& problem, const StartData& start,
                            const Point& p, double mu) {
  // J · dv/d(ln μ) = -μ ∂F/∂μ, with ∂r_cent/∂μ = -g/τ and ∂r_gap/∂μ = ϑξ/τ².
  const Vector u = shifted_image(problem, start, p);
  const Vector g = problem.domain().gradient(u, Side::primal);
  const Linearization lin = linearize(problem, start, p, mu);
  const Vector f_dual = Vector::Zero(problem.n());
  const Vector f_cent = -(mu / p.tau) * g;
  const double f_gap = mu * problem.theta() * problem.xi() / (p.tau * p.tau);
  return solve_eliminated(problem, lin, f_dual, f_cent, f_gap);
}

Iterate corrector_step(const Problem& problem, const StartData& start, const Point& p,
                       double mu, const FollowerOptions& options) {
  constexpr double kResidualTarget = 1e-12;
  constexpr double kStagnationLevel = 1e-6;
  const double target = options.corrector_target * problem.kappa();
  Point current = p;
  double previous = kInf;

  for (int step = 0; step <= options.max_corrector_steps; ++step) {
    const Residuals r = residuals(problem, start, current, mu);
    const double prox = trial_proximity(problem, start, current, mu_of(problem, start, current));
    if (prox <= target) {
      const bool converged = r.scaled_norm <= kResidualTarget;
      // Roundoff floor: small residual that a full step no longer shrinks.
      const bool stagnated = r.scaled_norm <= kStagnationLevel && r.scaled_norm > 0.25 * previous;
      if (converged || stagnated) return make_iterate(problem, start, std::move(current));
    }
    if (step == options.max_corrector_steps) break;

    const Direction d = newton_direction(problem, start, current, mu);
    double alpha =
        std::min(1.0, options.fraction_to_boundary * boundary_step(problem, start, current, d));
    Point trial = advance(current, d, alpha);
    // The image u is nonlinear in τ; halve until the exact point is interior.
    while (!(trial.tau > 0.0) ||
           !problem.domain().is_interior(shifted_image(problem, start, trial), Side::primal) ||
           !problem.domain().is_interior(trial.y, Side::conjugate)) {
      alpha *= 0.5;
      if (alpha < 1e-14) {
        throw Error{ErrorCode::corrector_stall, "corrector step collapsed to zero"};
      }
      trial = advance(current, d, alpha);
    }
    // Only full Newton steps say anything about stagnation.
    previous = alpha == 1.0 ? r.scaled_norm : kInf;
    current = std::move(trial);
  }
  throw Error{ErrorCode::corrector_stall,
              "proximity not reduced to " + std::to_string(target) + " after " +
                  std::to_string(options.max_corrector_steps) + " Newton steps"};
}

PredictorResult predictor_step(const Problem& problem, const StartData& start,
                               const Iterate& it, const FollowerOptions& options) {
  const double radius = options.predictor_radius * problem.kappa();
  const Direction d = tangent_direction(problem, start, it, it.mu);
  double alpha = std::min(options.max_predictor_step,
                          options.fraction_to_boundary * boundary_step(problem, start, it, d));
  const double required = it.mu * (1.0 + 1e-12);

  while (alpha > 1e-12) {
    Point trial = advance(it, d, alpha);
    if (trial.tau > 0.0) {
      const double mu = mu_of(problem, start, trial);
      if (mu > required) {
        const double prox = trial_proximity(problem, start, trial, mu);
        if (prox <= radius) {
          Iterate next;
          static_cast<Point&>(next) = std::move(trial);
          next.mu = mu;
          next.proximity = prox;
          return PredictorResult{std::move(next), mu, alpha};
        }
      }
    }
    alpha *= 0.5;
  }
  throw Error{ErrorCode::predictor_stall, "predictor cannot increase mu"};
}

double log_mu_slope(const std::vector<TraceRow>& trace) {
  const std::size_t count = trace.size();
  if (count < 2) return 0.0;
  double mean_k = 0.0;
  double mean_l = 0.0;
  for (const auto& row : trace) {
    mean_k += row.iter;
    mean_l += std::log(row.mu);
  }
  mean_k /= static_cast<double>(count);
  mean_l /= static_cast<double>(count);
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& row : trace) {
    const double dk = row.iter - mean_k;
    sxy += dk * (std::log(row.mu) - mean_l);
    sxx += dk * dk;
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

namespace {

bool satisfies_path_invariants(const Problem& problem, const StartData& start,
                               const Iterate& it) {
  if (!check_qdd(problem, start, it).ok()) return false;
  if (!(it.proximity <= problem.kappa())) return false;
  const GapBounds bounds = gap_bounds_at(problem, start, it, it.mu);
  const double slack = 1e-8 * (1.0 + std::abs(bounds.lower) + std::abs(bounds.upper));
  if (!bounds.holds(slack)) return false;
  if (it.mu >= 1.0 && it.tau < problem.constants().tau_lower_bound()) return false;
  return true;
}

StatusReport failure_report(Status status, const Iterate& it, std::string message) {
  StatusReport report;
  report.status = status;
  report.x = it.x;
  report.y_scaled = it.y / it.tau;
  report.message = std::move(message);
  return report;
}

}  // namespace

FollowResult follow(const Problem& problem, const StartData& start,
                    const FollowerOptions& options, const TraceSink& sink,
                    const IterateObserver& observer) {
  const double cap = options.mu_cap.value_or(mu_cap(problem, options.epsilon));
  FollowResult result;
  Iterate it = make_iterate(problem, start, initial_point(problem, start));
  int violations = 0;
  std::optional<StatusReport> pending_weak;
  int weak_since = 0;

  auto finish = [&](StatusReport report, int iter) {
    report.diagnostics.mu = it.mu;
    report.diagnostics.tau = it.tau;
    report.diagnostics.proximity = it.proximity;
    report.diagnostics.iterations = iter;
    report.diagnostics.log_mu_slope = log_mu_slope(result.trace);
    report.diagnostics.invariant_violations = violations;
    report.diagnostics.stop = stop_params(problem, start, it);
    result.report = std::move(report);
    result.last = it;
    return result;
  };

  for (int iter = 0;; ++iter) {
    const StopParams sp = stop_params(problem, start, it);
    TraceRow row{iter, it.mu, it.tau, sp.gap, sp.p_feas, sp.d_feas, it.proximity};
    result.trace.push_back(row);
    if (sink) sink(row);
    if (observer) observer(it);
    if (!satisfies_path_invariants(problem, start, it)) ++violations;

    // Stopping rules are tested after each corrector, not at the start point.
    auto report = iter > 0 ? check_status(problem, start, it, options.epsilon, cap)
                           : std::nullopt;
    if (report) {
      const bool weak_certificate =
          report->status == Status::infeasibility_certificate ||
          report->status == Status::unboundedness_certificate;
      if (!options.strict || !weak_certificate) return finish(std::move(*report), iter);

      const CertificateAttempt attempt =
          report->status == Status::infeasibility_certificate
              ? strict_infeasibility_certificate(problem, start, it)
              : strict_unboundedness_certificate(problem, start, it, options.epsilon);
      if (const auto* cert = std::get_if<Certificate>(&attempt)) {
        report->certificate = *cert;
        report->verification = verify_certificate(problem, *cert);
        report->message = "exact certificate from local-norm projection";
        return finish(std::move(*report), iter);
      }
      if (!pending_weak) {
        pending_weak = std::move(*report);
        weak_since = iter;
      } else if (iter - weak_since >= options.strict_grace_iterations) {
        pending_weak->message = "strict projection did not succeed; ε-certificate reported";
        return finish(std::move(*pending_weak), iter);
      }
    }

    if (iter >= options.max_iterations) {
      if (pending_weak) return finish(std::move(*pending_weak), iter);
      return finish(failure_report(Status::iteration_limit, it,
                                   "iteration limit reached"),
                    iter);
    }

    try {
      const PredictorResult predicted = predictor_step(problem, start, it, options);
      it = corrector_step(problem, start, predicted.iterate, predicted.mu, options);
    } catch (const Error& e) {
      if (pending_weak) return finish(std::move(*pending_weak), iter);
      return finish(failure_report(Status::numerical_failure, it,
                                   std::string{to_string(e.code())} + ": " + e.what()),
                    iter);
    }
  }
}

}  // namespace dds
