#include "dds/problem.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/QR>

#include "dds/error.hpp"

namespace dds {

Problem validate_problem(RawProblem raw) {
  const Index m = raw.A.rows();
  const Index n = raw.A.cols();
  if (m == 0 || n == 0) {
    throw Error{ErrorCode::dimension_mismatch, "A must have at least one row and column"};
  }
  if (raw.c.size() != n) {
    throw Error{ErrorCode::dimension_mismatch,
                "c has length " + std::to_string(raw.c.size()) + " but A has " +
                    std::to_string(n) + " columns"};
  }
  if (!raw.A.allFinite() || !raw.c.allFinite()) {
    throw Error{ErrorCode::dimension_mismatch, "A and c must be finite"};
  }
  const auto& k = raw.constants;
  if (!(k.xi > 1.0) || !(k.kappa > 0.0) || !(k.xi - 1.0 - k.kappa > 0.0)) {
    throw Error{ErrorCode::bad_constants,
                "need xi > 1, kappa > 0 and xi - 1 - kappa > 0 (xi=" +
                    std::to_string(k.xi) + ", kappa=" + std::to_string(k.kappa) + ")"};
  }

  Domain domain{std::move(raw.atoms), m};

  Eigen::ColPivHouseholderQR<Matrix> qr(raw.A);
  qr.setThreshold(1e-10);  // relative to the largest pivot, i.e. ~‖A‖
  if (qr.rank() < n) {
    throw Error{ErrorCode::rank_deficient,
                "A has rank " + std::to_string(qr.rank()) + " < " + std::to_string(n) +
                    " columns; kernel(A) must be {0}"};
  }
  return Problem{std::move(raw.A), std::move(raw.c), std::move(domain), k};
}

StartData make_start(const Problem& problem, Vector z0) {
  if (z0.size() != problem.m()) {
    throw Error{ErrorCode::dimension_mismatch, "z0 must have length m"};
  }
  if (!problem.domain().is_interior(z0, Side::primal)) {
    throw Error{ErrorCode::domain_violation, "z0 is not strictly interior to D"};
  }
  StartData start;
  start.y0 = problem.domain().gradient(z0, Side::primal);
  start.y_tau0 = -start.y0.dot(z0) - problem.xi() * problem.theta();
  start.z0 = std::move(z0);
  return start;
}

StartData default_z0(const Problem& problem) {
  return make_start(problem, problem.domain().default_point());
}

Point initial_point(const Problem& problem, const StartData& start) {
  return Point{Vector::Zero(problem.n()), 1.0, start.y0};
}

Vector shifted_image(const Problem& problem, const StartData& start, const Point& p) {
  return problem.A() * p.x + start.z0 / p.tau;
}

double mu_of(const Problem& problem, const StartData& start, const Point& p) {
  const double scale = problem.xi() * problem.theta();
  const Vector aty0c = problem.A().transpose() * start.y0 + problem.c();
  return -(p.y.dot(start.z0) + p.tau * (start.y_tau0 + aty0c.dot(p.x))) / scale;
}

std::array<double, 3> mu_forms(const Problem& problem, const StartData& start,
                               const Point& p) {
  const double scale = problem.xi() * problem.theta();
  const Vector ax = problem.A() * p.x;
  const Vector u = ax + start.z0 / p.tau;
  const double cx = problem.c().dot(p.x);
  const double first =
      p.tau / scale * (-start.y_tau0 - p.tau * cx - p.y.dot(u));
  const double second =
      -(p.y.dot(start.z0) + p.tau * (start.y_tau0 + p.y.dot(ax)) + p.tau * p.tau * cx) /
      scale;
  return {first, second, mu_of(problem, start, p)};
}

QddCheck check_qdd(const Problem& problem, const StartData& start, const Point& p) {
  QddCheck check;
  check.tau_positive = p.tau > 0.0;
  if (check.tau_positive) {
    check.primal_margin =
        problem.domain().interior_margin(shifted_image(problem, start, p), Side::primal);
  } else {
    check.primal_margin = -std::numeric_limits<double>::infinity();
  }
  check.dual_margin = problem.domain().interior_margin(p.y, Side::conjugate);
  const Matrix& A = problem.A();
  const Vector r = A.transpose() * (p.y - start.y0) + (p.tau - 1.0) * problem.c();
  check.dual_residual = r.norm();
  const double roundoff = 1e-13 * A.norm() * (p.y.norm() + start.y0.norm());
  check.tolerance = std::max(1e-9 * (1.0 + problem.c().norm()), roundoff);
  return check;
}

double proximity_at(const Problem& problem, const StartData& start, const Point& p,
                    double mu) {
  if (!(mu > 0.0) || !(p.tau > 0.0)) {
    throw Error{ErrorCode::domain_violation, "proximity needs mu > 0 and tau > 0"};
  }
  const Vector s = (p.tau / mu) * p.y;
  const Domain& domain = problem.domain();
  if (!domain.is_interior(s, Side::conjugate)) {
    throw Error{ErrorCode::domain_violation, "(tau/mu) y is not interior to D*"};
  }
  const Vector u = shifted_image(problem, start, p);
  const Vector diff = u - domain.gradient(s, Side::conjugate);
  return domain.inverse_hessian_norm(s, diff, Side::conjugate);
}

double proximity(const Problem& problem, const StartData& start, const Point& p) {
  const QddCheck qdd = check_qdd(problem, start, p);
  if (!qdd.ok()) {
    throw Error{ErrorCode::domain_violation, "proximity is only defined on Q_DD"};
  }
  return proximity_at(problem, start, p, mu_of(problem, start, p));
}

ExtendedReal support_function(const Problem& problem, const Vector& y) {
  return problem.support(y);
}

bool GapBounds::holds(double slack) const {
  if (actual.is_infinite()) return true;
  return actual.value() >= lower - slack && actual.value() <= upper + slack;
}

GapBounds gap_bounds_at(const Problem& problem, const StartData& start,
                        const Point& p, double mu) {
  const double theta = problem.theta();
  const double tau2 = p.tau * p.tau;
  const double centre = -(start.y_tau0 / p.tau + problem.xi() * mu * theta / tau2);
  const double spread = problem.kappa() * mu * std::sqrt(theta) / tau2;
  GapBounds bounds;
  bounds.lower = centre - spread;
  bounds.upper = centre + spread + mu * theta / tau2;
  bounds.actual =
      ExtendedReal{problem.c().dot(p.x)} + scale(problem.support(p.y), 1.0 / p.tau);
  return bounds;
}

GapBounds gap_bounds(const Problem& problem, const StartData& start, const Point& p) {
  return gap_bounds_at(problem, start, p, mu_of(problem, start, p));
}

}  // namespace dds
