#include <cmath>
#include <limits>

#include <doctest.h>

#include "barrier_checks.hpp"
#include "dds/error.hpp"

using namespace dds;
using dds::testing::AtomSampler;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("halfline_lower values at the unit point") {
  const auto atom = BarrierAtom::halfline_lower({0}, 0.0);
  CHECK(atom_value(atom, vec({1.0}), Side::primal) == doctest::Approx(0.0));
  CHECK(atom_gradient(atom, vec({1.0}), Side::primal)(0) == doctest::Approx(-1.0));
  CHECK(atom_value(atom, vec({-1.0}), Side::conjugate) == doctest::Approx(-1.0));
  // Fenchel equality at the gradient point: Φ(1) + Φ*(-1) = <Φ'(1), 1>.
  CHECK(atom_value(atom, vec({1.0}), Side::primal) +
            atom_value(atom, vec({-1.0}), Side::conjugate) ==
        doctest::Approx(-1.0));
}

TEST_CASE("soc value and gradient at (2,0,0)") {
  const auto atom = BarrierAtom::soc({0, 1, 2});
  const Vector z = vec({2.0, 0.0, 0.0});
  CHECK(atom_value(atom, z, Side::primal) == doctest::Approx(-std::log(4.0)));
  const Vector g = atom_gradient(atom, z, Side::primal);
  CHECK(g(0) == doctest::Approx(-1.0));
  CHECK(g(1) == doctest::Approx(0.0));
  CHECK(g(2) == doctest::Approx(0.0));
}

TEST_CASE("offsets shift the membership test") {
  // z + d ∈ [0, 1] with d = 2 means z ∈ [-2, -1].
  const auto atom = BarrierAtom::box({0}, 0.0, 1.0, vec({2.0}));
  CHECK(atom_interior_margin(atom, vec({-1.5}), Side::primal) == doctest::Approx(0.5));
  CHECK(atom_interior_margin(atom, vec({0.5}), Side::primal) < 0.0);
  CHECK(atom_default_point(atom)(0) == doctest::Approx(-1.5));
}

TEST_CASE("support function examples") {
  const auto half = BarrierAtom::halfline_lower({0}, 0.0);
  CHECK(atom_support(half, vec({-1.0})) == ExtendedReal{0.0});
  CHECK(atom_support(half, vec({1.0})).is_infinite());

  const auto box = BarrierAtom::box({0}, 0.0, 1.0);
  CHECK(atom_support(box, vec({-1.0})).value() == doctest::Approx(0.0));
  CHECK(atom_support(box, vec({1.0})).value() == doctest::Approx(1.0));

  const auto upper = BarrierAtom::halfline_upper({0}, 3.0);
  CHECK(atom_support(upper, vec({2.0})).value() == doctest::Approx(6.0));
  CHECK(atom_support(upper, vec({-2.0})).is_infinite());

  // soc with offset d: D = K - d, δ*(y) = -<y, d> for y ∈ -K.
  const auto soc = BarrierAtom::soc({0, 1, 2}, vec({0.0, 0.0, 1.0}));
  CHECK(atom_support(soc, vec({-1.0, 1.0, 0.0})).value() == doctest::Approx(0.0));
  CHECK(atom_support(soc, vec({-2.0, 0.0, 1.0})).value() == doctest::Approx(-1.0));
  CHECK(atom_support(soc, vec({1.0, 0.0, 0.0})).is_infinite());
}

TEST_CASE("support function matches a brute-force supremum") {
  // Independent oracle: sup of <y, z> over a fine sample of the set.
  const auto box = BarrierAtom::box({0}, -0.5, 2.0, vec({0.25}));
  for (double y : {-3.0, -0.1, 0.0, 0.7, 4.0}) {
    double best = -kInf;
    for (int i = 0; i <= 1000; ++i) {
      const double w = -0.5 + 2.5 * i / 1000.0;
      best = std::max(best, y * (w - 0.25));
    }
    CHECK(atom_support(box, vec({y})).value() == doctest::Approx(best).epsilon(1e-12));
  }
  const auto soc = BarrierAtom::soc({0, 1}, vec({1.0, 0.0}));
  // 2-d cone {w0 >= |w1|} shifted: z = w - d. Sample the boundary rays.
  const Vector y = vec({-2.0, 1.0});
  double best = -kInf;
  for (int i = 0; i <= 2000; ++i) {
    const double t = 50.0 * i / 2000.0;
    for (double sgn : {-1.0, 1.0}) {
      const Vector w = vec({t, sgn * t});
      best = std::max(best, y.dot(w - vec({1.0, 0.0})));
    }
  }
  CHECK(atom_support(soc, y).value() == doctest::Approx(best));
}

TEST_CASE("interior margin examples") {
  CHECK(atom_interior_margin(BarrierAtom::halfline_lower({0}, 0.0), vec({0.5}), Side::primal) ==
        doctest::Approx(0.5));
  CHECK(atom_interior_margin(BarrierAtom::soc({0, 1, 2}), vec({1.0, 1.0, 0.0}), Side::primal) ==
        doctest::Approx(0.0));
  CHECK(atom_interior_margin(BarrierAtom::halfline_lower({0}, 0.0), vec({-0.25}),
                             Side::conjugate) == doctest::Approx(0.25));
  CHECK(atom_interior_margin(BarrierAtom::box({0}, 0.0, 1.0), vec({123.0}), Side::conjugate) ==
        kInf);
}

TEST_CASE("evaluators reject points outside the domain") {
  const auto half = BarrierAtom::halfline_lower({0}, 0.0);
  CHECK_THROWS_AS(atom_value(half, vec({-1.0}), Side::primal), Error);
  CHECK_THROWS_AS(atom_gradient(half, vec({0.0}), Side::primal), Error);
  CHECK_THROWS_AS(atom_hessian(half, vec({1.0}), Side::conjugate), Error);
  try {
    atom_value(half, vec({-1.0}), Side::primal);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain_violation);
  }
}

TEST_CASE("atom validation") {
  CHECK_THROWS_AS(validate_atom(BarrierAtom::box({0}, 1.0, 1.0)), Error);
  CHECK_THROWS_AS(validate_atom(BarrierAtom::soc({0})), Error);
  CHECK_THROWS_AS(validate_atom(BarrierAtom::halfline_lower({0, 1}, 0.0)), Error);
  BarrierAtom bad = BarrierAtom::soc({0, 1, 2});
  bad.offset = vec({1.0});
  CHECK_THROWS_AS(validate_atom(bad), Error);
  CHECK_NOTHROW(validate_atom(BarrierAtom::soc({0, 1})));
}

TEST_CASE("theta by kind") {
  CHECK(BarrierAtom::halfline_lower({0}, 0.0).theta() == 1.0);
  CHECK(BarrierAtom::halfline_upper({0}, 0.0).theta() == 1.0);
  CHECK(BarrierAtom::box({0}, 0.0, 1.0).theta() == 2.0);
  CHECK(BarrierAtom::soc({0, 1, 2}).theta() == 2.0);
}

TEST_CASE("conjugate Hessian inverts the primal Hessian") {
  AtomSampler sampler{7};
  for (AtomKind kind : testing::all_kinds()) {
    for (int i = 0; i < 20; ++i) {
      const auto s = sampler.sample(kind);
      const Vector y = atom_gradient(s.atom, s.z, Side::primal);
      const Matrix H = atom_hessian(s.atom, s.z, Side::primal);
      const Matrix Hs = atom_hessian(s.atom, y, Side::conjugate);
      const Matrix I = Matrix::Identity(s.z.size(), s.z.size());
      CHECK((H * Hs - I).norm() < 1e-8 * (1.0 + H.norm() * Hs.norm()));
    }
  }
}

TEST_CASE("Fenchel-Young inequality against random primal points") {
  AtomSampler sampler{11};
  for (AtomKind kind : testing::all_kinds()) {
    for (int i = 0; i < 50; ++i) {
      const auto s = sampler.sample(kind);
      const Vector y = atom_gradient(s.atom, sampler.nearby(s), Side::primal);
      const double lhs = atom_value(s.atom, s.z, Side::primal) +
                         atom_value(s.atom, y, Side::conjugate);
      CHECK(lhs >= y.dot(s.z) - 1e-10 * (1.0 + std::abs(lhs)));
    }
  }
}

TEST_CASE("property suite on random points") {
  const auto r = testing::run_barrier_suite(2024, 100);
  CHECK(r.points == 400);
  CHECK(r.round_trip <= 1e-10);
  CHECK(r.fenchel_young <= 1e-10);
  CHECK(r.theta <= 1e-10);
  CHECK(r.conjugate_theta <= 1e-10);
  CHECK(r.self_concordance <= 1e-12);
  CHECK(r.finite_difference <= 1e-6);
}

TEST_CASE("max step stops at the boundary") {
  const auto half = BarrierAtom::halfline_lower({0}, 0.0);
  CHECK(atom_max_step(half, vec({1.0}), vec({-0.5}), Side::primal) == doctest::Approx(2.0));
  CHECK(atom_max_step(half, vec({1.0}), vec({0.5}), Side::primal) == kInf);

  const auto soc = BarrierAtom::soc({0, 1});
  // From (2, 0) along (0, 1): boundary where 2 = |a|.
  CHECK(atom_max_step(soc, vec({2.0, 0.0}), vec({0.0, 1.0}), Side::primal) ==
        doctest::Approx(2.0));
  // Conjugate side of soc is -K: from (-2, 0) along (1, 0) the step is 2.
  CHECK(atom_max_step(soc, vec({-2.0, 0.0}), vec({1.0, 0.0}), Side::conjugate) ==
        doctest::Approx(2.0));
  const auto box = BarrierAtom::box({0}, 0.0, 1.0);
  CHECK(atom_max_step(box, vec({0.5}), vec({1.0}), Side::primal) == doctest::Approx(0.5));
  CHECK(atom_max_step(box, vec({0.5}), vec({1.0}), Side::conjugate) == kInf);
}

TEST_CASE("local norms") {
  LocalMetric m{Matrix::Identity(2, 2) * 4.0, Side::primal};
  const Vector v = vec({1.0, 0.0});
  CHECK(local_norm(m, v, NormMode::direct) == doctest::Approx(2.0));
  CHECK(local_norm(m, v, NormMode::inverse) == doctest::Approx(0.5));
  LocalMetric bad{-Matrix::Identity(2, 2), Side::primal};
  CHECK_THROWS_AS(local_norm(bad, v, NormMode::direct), Error);
}

TEST_CASE("domain coverage") {
  CHECK_THROWS_AS(Domain({BarrierAtom::halfline_lower({0}, 0.0)}, 2), Error);
  CHECK_THROWS_AS(
      Domain({BarrierAtom::halfline_lower({0}, 0.0), BarrierAtom::halfline_lower({0}, 1.0)}, 1),
      Error);
  CHECK_THROWS_AS(Domain({BarrierAtom::halfline_lower({3}, 0.0)}, 1), Error);
  try {
    Domain({BarrierAtom::halfline_lower({0}, 0.0), BarrierAtom::halfline_lower({0}, 1.0)}, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::atom_coverage);
  }

  const Domain d({BarrierAtom::box({1}, 0.0, 1.0), BarrierAtom::soc({0, 2})}, 3);
  CHECK(d.theta() == 4.0);
  const Vector z = d.default_point();
  CHECK(d.is_interior(z, Side::primal));
  const Matrix H = d.hessian(z, Side::primal);
  // Block structure follows the coordinate lists.
  CHECK(H(0, 1) == 0.0);
  CHECK(H(1, 2) == 0.0);
  const Vector v = vec({0.3, -0.2, 0.1});
  CHECK(d.inverse_hessian_norm(z, v, Side::primal) ==
        doctest::Approx(std::sqrt(v.dot(H.llt().solve(v)))));
  CHECK(d.hessian_norm(z, v, Side::primal) == doctest::Approx(std::sqrt(v.dot(H * v))));
}

TEST_CASE("generalized Cauchy-Schwarz between the norm pair") {
  std::mt19937_64 rng{5};
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 100; ++trial) {
    Matrix B(3, 3);
    for (Index i = 0; i < 9; ++i) B.data()[i] = n01(rng);
    const LocalMetric m{B * B.transpose() + 0.1 * Matrix::Identity(3, 3), Side::primal};
    Vector x(3);
    Vector s(3);
    for (Index i = 0; i < 3; ++i) {
      x(i) = n01(rng);
      s(i) = n01(rng);
    }
    CHECK(std::abs(s.dot(x)) <=
          local_norm(m, x, NormMode::direct) * local_norm(m, s, NormMode::inverse) * (1 + 1e-12));
  }
  CHECK(local_norm(LocalMetric{Matrix::Identity(2, 2), Side::primal}, vec({3.0, 4.0}),
                   NormMode::direct) == doctest::Approx(5.0));
}
