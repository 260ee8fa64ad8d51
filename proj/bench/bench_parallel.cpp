// Serial vs OpenMP timings for the parallel kernels.

#include <benchmark/benchmark.h>

#include "sparsecw/fixtures.hpp"
#include "sparsecw/harness.hpp"
#include "sparsecw/instance.hpp"

using namespace sparsecw;

namespace {

ExecutionPolicy policy_arg(const benchmark::State& state) {
  return state.range(0) ? ExecutionPolicy::parallel : ExecutionPolicy::serial;
}

void set_label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_MultistartGreedy(benchmark::State& state) {
  const LeastSquaresModel ls = fixture_ls_model();
  const BFCatalog cat = enumerate_bf(ls, 2);
  SolverConfig cfg;
  cfg.algorithm = Algorithm::greedy;
  MultistartOptions opt;
  opt.n_starts = 1000;
  opt.seed = 1;
  opt.catalog = &cat;
  opt.policy = policy_arg(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_multistart(ls, 2, cfg, opt));
  set_label(state);
}

void BM_MultistartQuartic(benchmark::State& state) {
  const ProblemInstance inst = generate_quartic(1, 20, 30, 3);
  const auto model = inst.make_model();
  SolverConfig cfg;
  cfg.algorithm = Algorithm::greedy;
  MultistartOptions opt;
  opt.n_starts = 50;
  opt.seed = 1;
  opt.reference = inst.x_true;
  opt.sign_symmetric = true;
  opt.policy = policy_arg(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_multistart(*model, 3, cfg, opt));
  set_label(state);
}

void BM_EnumerateBF(benchmark::State& state) {
  const ProblemInstance inst = generate_gaussian_ls(3, 20, 30, 3, true, false);
  const auto model = inst.make_model();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_bf(*model, 3, 100000, policy_arg(state)));
  set_label(state);
}

void BM_BasinGrid(benchmark::State& state) {
  const QuadraticModel q(DenseMatrix{{2, 1}, {1, 3}}, {-1, 2});
  const BFCatalog cat = enumerate_bf(q, 1);
  SolverConfig cfg;
  cfg.algorithm = Algorithm::iht;
  cfg.l = 1.5 * *q.lipschitz_constants().global;
  const GridSpec grid{-3, 3, -3, 3, 64, 64};
  for (auto _ : state) benchmark::DoNotOptimize(basin_grid(q, 1, cfg, cat, grid, policy_arg(state)));
  set_label(state);
}

}  // namespace

BENCHMARK(BM_MultistartGreedy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultistartQuartic)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateBF)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BasinGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
