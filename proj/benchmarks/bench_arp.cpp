#include <benchmark/benchmark.h>

#include "arp/gaussian_process.hpp"
#include "arp/lambert.hpp"
#include "arp/mallows.hpp"
#include "arp/problem.hpp"

namespace {

using namespace arp;

const AsteroidCatalog& catalog() {
  static const AsteroidCatalog c = synthetic_catalog();
  return c;
}

void BM_SolveKepler(benchmark::State& state) {
  Rng rng(1);
  double M = 0.0;
  for (auto _ : state) {
    M = rng.uniform(0.0, kTwoPi);
    benchmark::DoNotOptimize(solve_kepler(M, 0.7));
  }
}
BENCHMARK(BM_SolveKepler);

void BM_Lambert(benchmark::State& state) {
  const GravParam mu;
  const Vec3 r1(kAuKm, 0.1 * kAuKm, 0.0);
  const Vec3 r2(-1.2 * kAuKm, 1.9 * kAuKm, 0.05 * kAuKm);
  for (auto _ : state) benchmark::DoNotOptimize(lambert(r1, r2, 210.0, mu));
}
BENCHMARK(BM_Lambert);

void BM_OptimizeLeg(benchmark::State& state) {
  const Instance inst = generate_instance(catalog(), 2, 42);
  const GravParam mu;
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_leg(inst.asteroids[0], inst.asteroids[1], inst.tau0, mu));
  }
}
BENCHMARK(BM_OptimizeLeg)->Unit(benchmark::kMicrosecond);

void BM_EvaluateSequence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = generate_instance(catalog(), n, 42);
  Rng rng(3);
  const Permutation p = sample_uniform(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_sequence(inst, p));
}
BENCHMARK(BM_EvaluateSequence)->Arg(10)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_KendallMergeSort(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(4);
  const Permutation p = sample_uniform(n, rng);
  const Permutation q = sample_uniform(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kendall_distance(p, q));
}
BENCHMARK(BM_KendallMergeSort)->Arg(15)->Arg(30);

void BM_KendallSignature(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(4);
  const PairSignature p(sample_uniform(n, rng));
  const PairSignature q(sample_uniform(n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(p.distance(q));
}
BENCHMARK(BM_KendallSignature)->Arg(15)->Arg(30);

void BM_MallowsSample(benchmark::State& state) {
  Rng rng(5);
  const MallowsState ms{sample_uniform(30, rng), theta_for_target(30, 50.0), 0};
  for (auto _ : state) benchmark::DoNotOptimize(mallows_sample(ms, rng));
}
BENCHMARK(BM_MallowsSample);

SurrogateState surrogate_state(int n, int m) {
  Rng rng(6);
  SurrogateState s;
  const Permutation ref = sample_uniform(n, rng);
  for (int k = 0; k < m; ++k) {
    s.evaluated.push_back(sample_uniform(n, rng));
    s.f.push_back(static_cast<double>(kendall_distance(s.evaluated.back(), ref)) + rng.uniform());
  }
  return s;
}

void BM_GpFit(benchmark::State& state) {
  const SurrogateState s = surrogate_state(15, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gp_fit(s));
}
BENCHMARK(BM_GpFit)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_GpPredictBatch(benchmark::State& state) {
  const PermutationGp gp = gp_fit(surrogate_state(15, static_cast<int>(state.range(0))));
  Rng rng(7);
  std::vector<Permutation> points;
  for (int k = 0; k < 19; ++k) points.push_back(sample_uniform(15, rng));
  for (auto _ : state) benchmark::DoNotOptimize(gp.predict(points));
}
BENCHMARK(BM_GpPredictBatch)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
