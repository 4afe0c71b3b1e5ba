#include <benchmark/benchmark.h>

#include "dds/barrier.hpp"
#include "dds/path_follower.hpp"

namespace {

dds::Problem box_problem() {
  dds::RawProblem raw;
  raw.A = dds::Matrix::Constant(1, 1, 1.0);
  raw.c = dds::Vector::Constant(1, 1.0);
  raw.atoms = {dds::BarrierAtom::box({0}, 0.0, 1.0)};
  return dds::validate_problem(std::move(raw));
}

dds::Problem soc_problem() {
  dds::RawProblem raw;
  raw.A.resize(3, 2);
  raw.A << 0.0, 1.0, 1.0, 0.0, 0.0, 0.0;
  raw.c = dds::Vector{{-1.0, 1.0}};
  raw.atoms = {dds::BarrierAtom::soc({0, 1, 2}, dds::Vector{{0.0, 0.0, 1.0}})};
  return dds::validate_problem(std::move(raw));
}

void BM_SocConjugateGradient(benchmark::State& state) {
  const dds::BarrierAtom atom = dds::BarrierAtom::soc({0, 1, 2});
  const dds::Vector y{{-3.0, 0.5, -1.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dds::atom_gradient(atom, y, dds::Side::conjugate));
  }
}
BENCHMARK(BM_SocConjugateGradient);

void BM_SocHessian(benchmark::State& state) {
  const dds::BarrierAtom atom = dds::BarrierAtom::soc({0, 1, 2});
  const dds::Vector z{{3.0, 0.5, -1.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dds::atom_hessian(atom, z, dds::Side::primal));
  }
}
BENCHMARK(BM_SocHessian);

void BM_NewtonDirection(benchmark::State& state) {
  const dds::Problem p = soc_problem();
  const dds::StartData s = dds::default_z0(p);
  const dds::Point x0 = dds::initial_point(p, s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dds::newton_direction(p, s, x0, 1.5));
  }
}
BENCHMARK(BM_NewtonDirection);

void BM_SolveBox(benchmark::State& state) {
  const dds::Problem p = box_problem();
  const dds::StartData s = dds::default_z0(p);
  dds::FollowerOptions opts;
  opts.epsilon = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dds::follow(p, s, opts));
  }
}
BENCHMARK(BM_SolveBox)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
