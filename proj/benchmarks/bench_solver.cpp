#include <algorithm>
#include <numeric>
#include <vector>

#include <benchmark/benchmark.h>

#include "zk/banded.hpp"
#include "zk/sine_basis.hpp"
#include "zk/solver.hpp"

namespace {

zk::GridSpec grid_for(int N, int M) { return {N, M, zk::GridSpec::min_points(N), 1e-3, 1.0}; }

void BM_Step(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const int M = static_cast<int>(state.range(1));
  const zk::DomainSpec domain;
  const zk::GalerkinSolver solver(domain, grid_for(N, M));
  zk::ModalState s = solver.initialize(zk::make_canonical_u0(domain, 0.01, 1));
  s = solver.step(solver.step(s));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.step(s));
  }
  state.SetItemsProcessed(state.iterations() * N * (M + 1));
}
BENCHMARK(BM_Step)->Args({8, 128})->Args({16, 256})->Args({32, 512})->Unit(benchmark::kMicrosecond);

void BM_ProjectCubicTerm(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const int P = 257;
  const zk::SineBasis basis(N, zk::GridSpec::min_points(N), 1.0);
  const Eigen::MatrixXd u = Eigen::MatrixXd::Random(N, P) * 1e-2;
  const Eigen::MatrixXd ux = Eigen::MatrixXd::Random(N, P) * 1e-2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(basis.project_cubic_term(u, ux));
  }
  state.SetItemsProcessed(state.iterations() * P);
}
BENCHMARK(BM_ProjectCubicTerm)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMicrosecond);

// Solve with a factored operator of the same band shape as 1.5 I + dt A_j.
void BM_BandedSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  zk::BandedMatrix a(n, 2, 3);
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 3); ++j) a.at(i, j) = i == j ? 4.0 : 0.3 / (1 + j - i + 3);
  }
  const zk::BandedLU lu(a);
  std::vector<double> rhs(n);
  for (auto _ : state) {
    std::iota(rhs.begin(), rhs.end(), 0.0);
    lu.solve(rhs);
    benchmark::DoNotOptimize(rhs.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_BandedSolve)->RangeMultiplier(2)->Range(62, 510);

}  // namespace

BENCHMARK_MAIN();
