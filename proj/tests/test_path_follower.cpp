#include <cmath>

#include <Eigen/LU>
#include <doctest.h>

#include "dds/error.hpp"
#include "dds/path_follower.hpp"
#include "instances.hpp"

using namespace dds;
using namespace dds::testing;

namespace {

Vector stack(const Residuals& r) {
  Vector out(r.r_dual.size() + r.r_cent.size() + 1);
  out << r.r_dual, r.r_cent, r.r_gap;
  return out;
}

Point unpack(const Point& base, const Vector& v) {
  const Index n = base.x.size();
  const Index m = base.y.size();
  return Point{v.head(n), v(n), v.segment(n + 1, m)};
}

Vector pack(const Point& p) {
  Vector v(p.x.size() + 1 + p.y.size());
  v << p.x, p.tau, p.y;
  return v;
}

Matrix fd_jacobian(const Problem& problem, const StartData& s, const Point& p, double mu) {
  const Vector v = pack(p);
  const Index k = v.size();
  Matrix J(k, k);
  for (Index j = 0; j < k; ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(v(j)));
    Vector vp = v;
    Vector vm = v;
    vp(j) += h;
    vm(j) -= h;
    J.col(j) = (stack(residuals(problem, s, unpack(p, vp), mu)) -
                stack(residuals(problem, s, unpack(p, vm), mu))) /
               (2.0 * h);
  }
  return J;
}

// The central-path system of the box instance written out by hand (n = m = 1,
// c = 1, z0 = 1/2, y0 = 0, y_tau0 = -4, ξϑ = 4), solved by Newton with a
// finite-difference Jacobian. Shares no code with the library.
Vector box_path_point(double mu, Vector v) {
  auto F = [mu](const Vector& w) {
    const double x = w(0);
    const double tau = w(1);
    const double y = w(2);
    const double u = x + 0.5 / tau;
    Vector r(3);
    r(0) = y + (tau - 1.0);
    r(1) = y - (mu / tau) * (-1.0 / u + 1.0 / (1.0 - u));
    r(2) = x + y * u / tau + 4.0 * mu / (tau * tau) - 4.0 / tau;
    return r;
  };
  for (int it = 0; it < 100; ++it) {
    const Vector r = F(v);
    if (r.norm() < 1e-14) break;
    Matrix J(3, 3);
    for (int j = 0; j < 3; ++j) {
      Vector vp = v;
      Vector vm = v;
      const double h = 1e-7 * std::max(1.0, std::abs(v(j)));
      vp(j) += h;
      vm(j) -= h;
      J.col(j) = (F(vp) - F(vm)) / (2.0 * h);
    }
    v -= 0.5 * J.fullPivLu().solve(r);  // damped for safety near the boundary
  }
  return v;
}

}  // namespace

TEST_CASE("residuals at the initial point") {
  const Problem p = inst_soc();
  const StartData s = default_z0(p);
  const Point x0 = initial_point(p, s);
  const Residuals r1 = residuals(p, s, x0, 1.0);
  CHECK(r1.r_dual.norm() == doctest::Approx(0.0));
  CHECK(r1.r_cent.norm() == doctest::Approx(0.0));
  CHECK(r1.r_gap == doctest::Approx(0.0));

  // At μ = 2: r_cent = y0 - 2Φ'(z0) = -y0 and r_gap = ξϑ.
  const Residuals r2 = residuals(p, s, x0, 2.0);
  CHECK((r2.r_cent + s.y0).norm() <= 1e-14);
  CHECK(r2.r_gap == doctest::Approx(p.xi() * p.theta()));
}

TEST_CASE("path Jacobian agrees with finite differences") {
  for (const Problem& p : {inst_box(), inst_inf(), inst_soc()}) {
    const StartData s = default_z0(p);
    Point pt = initial_point(p, s);
    pt.x = Vector::Constant(p.n(), 0.01);
    pt.tau = 1.1;
    const double mu = 1.7;
    const Matrix J = path_jacobian(p, s, pt, mu);
    const Matrix F = fd_jacobian(p, s, pt, mu);
    CHECK((J - F).norm() <= 1e-6 * (1.0 + J.norm()));
  }
}

TEST_CASE("block-eliminated Newton step equals the dense solve") {
  for (const Problem& p : {inst_box(), inst_unb(), inst_soc()}) {
    const StartData s = default_z0(p);
    Point pt = initial_point(p, s);
    pt.x = Vector::Constant(p.n(), 0.02);
    const double mu = 1.3;
    const Direction d = newton_direction(p, s, pt, mu);
    const Vector dense =
        path_jacobian(p, s, pt, mu).fullPivLu().solve(-stack(residuals(p, s, pt, mu)));
    Vector got(dense.size());
    got << d.dx, d.dtau, d.dy;
    CHECK((got - dense).norm() <= 1e-10 * (1.0 + dense.norm()));
  }
}

TEST_CASE("tangent solves the differentiated system") {
  for (const Problem& p : {inst_box(), inst_inf(), inst_unb(), inst_soc()}) {
    const StartData s = default_z0(p);
    const Point x0 = initial_point(p, s);
    const double mu = 1.0;
    const Direction t = tangent_direction(p, s, x0, mu);
    // Differentiated dual equality: Aᵀ dy = -dτ c.
    CHECK((p.A().transpose() * t.dy + t.dtau * p.c()).norm() <= 1e-9);
    // J t = -μ ∂F/∂μ with the μ-derivative taken by finite differences.
    const double h = 1e-6;
    const Vector dF = (stack(residuals(p, s, x0, mu + h)) - stack(residuals(p, s, x0, mu - h))) /
                      (2.0 * h);
    Vector tv(dF.size());
    tv << t.dx, t.dtau, t.dy;
    const Vector lhs = path_jacobian(p, s, x0, mu) * tv;
    CHECK((lhs + mu * dF).norm() <= 1e-6 * (1.0 + dF.norm()));
  }
}

TEST_CASE("corrector leaves an on-path point unchanged") {
  const Problem p = inst_box();
  const StartData s = default_z0(p);
  const Point x0 = initial_point(p, s);
  const Iterate it = corrector_step(p, s, x0, 1.0);
  CHECK((it.x - x0.x).norm() == 0.0);
  CHECK(it.tau == x0.tau);
  CHECK((it.y - x0.y).norm() == 0.0);
}

TEST_CASE("corrector converges from a perturbed point") {
  const Problem p = inst_box();
  const StartData s = default_z0(p);
  FollowerOptions opts;
  opts.max_corrector_steps = 5;

  Point start = initial_point(p, s);
  start.x(0) += 1e-3;
  const Iterate it = corrector_step(p, s, start, 1.0, opts);
  CHECK(it.proximity <= p.kappa() / 2.0);
  const Vector oracle = box_path_point(1.0, Vector{{start.x(0), start.tau, start.y(0)}});
  CHECK(std::abs(it.x(0) - oracle(0)) <= 1e-8);
  CHECK(std::abs(it.tau - oracle(1)) <= 1e-8);
  CHECK(std::abs(it.y(0) - oracle(2)) <= 1e-8);

  // At a larger μ, starting from the μ = 1 point perturbed the same way.
  FollowerOptions loose;
  const double mu = 1.5;
  const Iterate it2 = corrector_step(p, s, start, mu, loose);
  const Vector oracle2 = box_path_point(mu, Vector{{start.x(0), start.tau, start.y(0)}});
  CHECK(std::abs(it2.x(0) - oracle2(0)) <= 1e-8);
  CHECK(std::abs(it2.tau - oracle2(1)) <= 1e-8);
  CHECK(std::abs(it2.y(0) - oracle2(2)) <= 1e-8);
  CHECK(residuals(p, s, it2, mu).scaled_norm <= 1e-8);
  CHECK(it2.mu == doctest::Approx(mu).epsilon(1e-9));
}

TEST_CASE("corrector recentres a point inside the predictor radius") {
  const Problem p = inst_soc();
  const StartData s = default_z0(p);
  Point pt = initial_point(p, s);
  pt.x(0) = 0.4;
  const double prox = proximity(p, s, pt);
  REQUIRE(prox > p.kappa());
  REQUIRE(prox <= 2.0 * p.kappa());
  const double mu = mu_of(p, s, pt);
  const Iterate it = corrector_step(p, s, pt, mu);
  CHECK(check_qdd(p, s, it).ok());
  CHECK(it.proximity <= p.kappa() / 2.0);
  CHECK(it.mu == doctest::Approx(mu).epsilon(1e-9));
}

TEST_CASE("predictor increases mu and the corrector recentres") {
  for (const Problem& p : {inst_box(), inst_soc()}) {
    const StartData s = default_z0(p);
    Iterate it;
    static_cast<Point&>(it) = initial_point(p, s);
    it.mu = 1.0;
    it.proximity = 0.0;
    const PredictorResult pr = predictor_step(p, s, it);
    CHECK(pr.mu > it.mu);
    CHECK(pr.iterate.proximity <= 2.0 * p.kappa());
    // Measured rate β with μ_new / μ = 1 + β/√ϑ.
    const double beta = (pr.mu / it.mu - 1.0) * std::sqrt(p.theta());
    CHECK(beta > 0.0);
    const Iterate next = corrector_step(p, s, pr.iterate, pr.mu);
    CHECK(next.proximity <= p.kappa() / 2.0);
    CHECK(check_qdd(p, s, next).ok());
  }
}

TEST_CASE("follow classifies the reference instances") {
  FollowerOptions opts;
  opts.epsilon = 1e-6;
  {
    const Problem p = inst_box();
    const auto r = follow(p, default_z0(p), opts);
    CHECK(r.report.status == Status::eps_solution);
    CHECK(r.report.diagnostics.invariant_violations == 0);
  }
  {
    const Problem p = inst_inf();
    const auto r = follow(p, make_start(p, inst_inf_z0()), opts);
    CHECK(r.report.status == Status::infeasibility_certificate);
  }
  {
    const Problem p = inst_unb();
    const auto r = follow(p, default_z0(p), opts);
    CHECK(r.report.status == Status::unboundedness_certificate);
  }
}

TEST_CASE("mu increases along every trace") {
  const Problem p = inst_box();
  FollowerOptions opts;
  opts.epsilon = 1e-6;
  const auto r = follow(p, default_z0(p), opts);
  REQUIRE(r.trace.size() > 2);
  for (std::size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace[k].mu > r.trace[k - 1].mu);
  CHECK(r.report.diagnostics.log_mu_slope > 0.0);
}

TEST_CASE("iteration limit and sink") {
  const Problem p = inst_box();
  FollowerOptions opts;
  opts.max_iterations = 3;
  int rows = 0;
  const auto r = follow(p, default_z0(p), opts, [&](const TraceRow&) { ++rows; });
  CHECK(r.report.status == Status::iteration_limit);
  CHECK(rows == 4);
  CHECK(r.trace.size() == 4);
}

TEST_CASE("log-mu slope of a geometric sequence") {
  std::vector<TraceRow> trace;
  for (int k = 0; k < 6; ++k) trace.push_back(TraceRow{k, std::exp(0.7 * k), 1, 0, 0, 0, 0});
  CHECK(log_mu_slope(trace) == doctest::Approx(0.7));
  CHECK(log_mu_slope({}) == 0.0);
}
