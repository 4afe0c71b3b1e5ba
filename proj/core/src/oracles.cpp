#include "dds/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "dds/error.hpp"

namespace dds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Maximises a concave function of x over the instance box by shrinking grids.
double grid_maximise(const OracleInstance& inst, const std::function<double(const Vector&)>& f) {
  const Index n = inst.lower.size();
  Vector lo = inst.lower;
  Vector hi = inst.upper;
  const int r = std::max(inst.resolution, 3);
  double best = -kInf;
  Vector best_x = 0.5 * (lo + hi);

  for (int pass = 0; pass < inst.passes; ++pass) {
    const Vector h = (hi - lo) / static_cast<double>(r - 1);
    Index total = 1;
    for (Index k = 0; k < n; ++k) total *= r;
    for (Index idx = 0; idx < total; ++idx) {
      Vector x(n);
      Index rem = idx;
      for (Index k = 0; k < n; ++k) {
        x(k) = lo(k) + static_cast<double>(rem % r) * h(k);
        rem /= r;
      }
      const double v = f(x);
      if (v > best) {
        best = v;
        best_x = x;
      }
    }
    // Keep two cells either side of the incumbent, clipped to the original box.
    for (Index k = 0; k < n; ++k) {
      lo(k) = std::max(inst.lower(k), best_x(k) - 2.0 * h(k));
      hi(k) = std::min(inst.upper(k), best_x(k) + 2.0 * h(k));
    }
  }
  return best;
}

Vector soc_projection(const Vector& w) {
  const double t = w(0);
  const double r = w.tail(w.size() - 1).norm();
  if (r <= t) return w;
  if (r <= -t) return Vector::Zero(w.size());
  Vector p(w.size());
  const double a = 0.5 * (t + r);
  p(0) = a;
  p.tail(w.size() - 1) = (a / r) * w.tail(w.size() - 1);
  return p;
}

}  // namespace

void validate_oracle_instance(const OracleInstance& instance) {
  if (instance.problem == nullptr) {
    throw Error{ErrorCode::bad_constants, "oracle instance has no problem"};
  }
  const Problem& p = *instance.problem;
  if (p.n() > 2 || p.m() > 4) {
    throw Error{ErrorCode::bad_constants, "oracles are limited to n <= 2 and m <= 4"};
  }
  if (instance.lower.size() != p.n() || instance.upper.size() != p.n() ||
      !(instance.lower.array() < instance.upper.array()).all()) {
    throw Error{ErrorCode::dimension_mismatch, "oracle bounding box must have lower < upper"};
  }
}

AnalyticCentre compute_xbar1(const Problem& problem, const std::optional<Vector>& x_start) {
  const Matrix& A = problem.A();
  const Domain& domain = problem.domain();
  Vector x;
  if (x_start) {
    x = *x_start;
  } else {
    x = A.colPivHouseholderQr().solve(domain.default_point());
  }
  if (!domain.is_interior(A * x, Side::primal)) {
    throw Error{ErrorCode::newton_divergence, "no interior starting point for x̄(1)"};
  }

  AnalyticCentre out;
  for (int iter = 0; iter < 500; ++iter) {
    const Vector z = A * x;
    const Vector grad = A.transpose() * domain.gradient(z, Side::primal) + problem.c();
    if (grad.norm() <= 1e-10) {
      out.x = x;
      out.y = domain.gradient(z, Side::primal);
      out.y_tau = -problem.xi() * problem.theta() - out.y.dot(z);
      out.iterations = iter;
      return out;
    }
    const Matrix H = A.transpose() * domain.hessian(z, Side::primal) * A;
    const Eigen::LLT<Matrix> llt(H);
    if (llt.info() != Eigen::Success) break;
    const Vector dx = -llt.solve(grad);
    const double lambda = std::sqrt(std::max(0.0, -grad.dot(dx)));
    const double step = lambda > 0.25 ? 1.0 / (1.0 + lambda) : 1.0;
    x += step * dx;
    if (!x.allFinite() || x.norm() > 1e12) break;
  }
  throw Error{ErrorCode::newton_divergence,
              "Newton for x̄(1) did not converge; primal or dual lacks strict feasibility"};
}

bool sigma_f_admissible(const Problem& problem, const StartData& start,
                        const AnalyticCentre& centre, double alpha) {
  if (!(alpha >= 0.0) || !(alpha < 1.0)) return false;
  const Domain& domain = problem.domain();
  const Vector dual = centre.y - alpha * start.y0;
  if (!(domain.interior_margin(dual, Side::conjugate) >= 0.0)) return false;
  const Vector primal = (problem.A() * centre.x - alpha * start.z0) / (1.0 - alpha);
  if (!(domain.interior_margin(primal, Side::primal) >= 0.0)) return false;
  const ExtendedReal support = problem.support(dual);
  if (support.is_infinite()) return false;
  return support.value() + centre.y_tau - alpha * start.y_tau0 <= 0.0;
}

double oracle_sigma_f(const Problem& problem, const StartData& start,
                      const AnalyticCentre& centre) {
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (sigma_f_admissible(problem, start, centre, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double max_domain_margin(const OracleInstance& instance, const Vector& shift) {
  const Problem& p = *instance.problem;
  return grid_maximise(instance, [&](const Vector& x) {
    return p.domain().interior_margin(p.A() * x + shift, Side::primal);
  });
}

double oracle_tp(const OracleInstance& instance, const Vector& z0) {
  validate_oracle_instance(instance);
  auto feasible = [&](double t) { return max_domain_margin(instance, z0 / t) >= 0.0; };
  constexpr double kLimit = 1e6;
  if (feasible(kLimit)) return kInf;
  double lo = 1.0;
  double hi = kLimit;
  while (hi - lo > 1e-5) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double distance_to_domain(const Domain& domain, const Vector& z) {
  double sum = 0.0;
  for (const BarrierAtom& atom : domain.atoms()) {
    const Vector w = domain.gather(atom, z) + atom.offset;
    double d = 0.0;
    switch (atom.kind) {
      case AtomKind::halfline_lower:
        d = std::max(0.0, atom.lower - w(0));
        break;
      case AtomKind::halfline_upper:
        d = std::max(0.0, w(0) - atom.upper);
        break;
      case AtomKind::box:
        d = std::max({0.0, atom.lower - w(0), w(0) - atom.upper});
        break;
      case AtomKind::soc:
        d = (w - soc_projection(w)).norm();
        break;
    }
    sum += d * d;
  }
  return std::sqrt(sum);
}

double oracle_sigma_p(const OracleInstance& instance) {
  validate_oracle_instance(instance);
  const Problem& p = *instance.problem;
  return -grid_maximise(instance, [&](const Vector& x) {
    return -distance_to_domain(p.domain(), p.A() * x);
  });
}

}  // namespace dds
