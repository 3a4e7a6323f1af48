// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
//
// Microbenchmarks for the hot engines: the lower-index ladder, a full
// contact homology table, the Bott function, and exact Smith reduction.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "reebindex/bott.hpp"
#include "reebindex/index.hpp"
#include "reebindex/lattice.hpp"
#include "reebindex/sympath.hpp"
#include "reebindex/toric.hpp"

namespace {

using namespace reebindex;

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Deterministic mixed path: two wiggly elliptic planes and one hyperbolic
/// plane, direct-summed and left in the standard frame.
SymplecticPath bench_path() {
  std::vector<double> ts;
  std::vector<Mat> gens;
  const int m = 8;
  for (int i = 0; i <= m; ++i) {
    double t = static_cast<double>(i) / m;
    Mat a(2, 2);
    a << kTwoPi * 0.83 * (1.0 + 0.2 * std::sin(kTwoPi * t)), 0.0, 0.0,
        kTwoPi * 0.83 * (1.0 + 0.2 * std::sin(kTwoPi * t));
    ts.push_back(t);
    gens.push_back(a);
  }
  SymplecticPath p(1, ts, gens);
  Vec angles(1);
  angles << -kTwoPi * 1.27;
  p = direct_sum(p, SymplecticPath::rotation(1, angles));
  Mat hyp(2, 2);
  hyp << 0.6, 0.0, 0.0, -0.6;
  return direct_sum(p, SymplecticPath::constant(1, hyp));
}

MomentCone c2_cone() {
  MomentCone cone;
  cone.ambient_dim = 3;
  auto row = [&](long a, long b, long c) {
    IntVec v(3, 0);
    v[0] = a;
    v[1] = b;
    v[2] = c;
    cone.normals.push_back(v);
  };
  row(1, 0, 1);
  row(0, -1, 1);
  row(0, 2, 1);
  row(-1, 3, 1);
  return cone;
}

void BM_cz_minus(benchmark::State& state) {
  const SymplecticPath p = iterate_path(bench_path(), 4);
  for (auto _ : state) benchmark::DoNotOptimize(cz_minus(p));
}
BENCHMARK(BM_cz_minus)->Unit(benchmark::kMillisecond);

void BM_hc_table(benchmark::State& state) {
  const MomentCone cone = c2_cone();
  const ReebVector reeb =
      nondegenerate_reeb_near(cone, sum_of_normals_reeb(cone), 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(hc_table(cone, reeb, 12).ranks.size());
}
BENCHMARK(BM_hc_table)->Unit(benchmark::kMillisecond);

void BM_bott_function(benchmark::State& state) {
  const SymplecticPath p = bench_path();
  for (auto _ : state)
    benchmark::DoNotOptimize(bott_function(p).arc_values.size());
}
BENCHMARK(BM_bott_function)->Unit(benchmark::kMillisecond);

void BM_snf(benchmark::State& state) {
  std::mt19937_64 rng(42);
  const int dim = static_cast<int>(state.range(0));
  IntMat a(dim, IntVec(dim));
  for (auto& row : a)
    for (auto& x : row)
      x = static_cast<long>(rng() % 2001) - 1000;
  for (auto _ : state) benchmark::DoNotOptimize(snf_invariants(a).size());
}
BENCHMARK(BM_snf)->Arg(6)->Arg(12)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
