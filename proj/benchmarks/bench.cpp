#include <benchmark/benchmark.h>

#include "zplie/random.hpp"
#include "zplie/solver.hpp"
#include "zplie/structure.hpp"

using namespace zplie;

namespace {

Algebra algebra_for(int which) {
  switch (which) {
    case 0: return build_matrix_algebra(2);
    case 1: return build_matrix_algebra(3);
    case 2: return build_block_diagonal({2, 2});
    default: return build_block_diagonal({3, 2});
  }
}

void BM_ZeroProductSpan(benchmark::State& state) {
  const Algebra alg = algebra_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(zero_product_span(alg, 1).size());
  state.SetLabel(alg.name());
}
BENCHMARK(BM_ZeroProductSpan)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_SolveLevel1(benchmark::State& state) {
  const Algebra alg = algebra_for(static_cast<int>(state.range(0)));
  const TensorSpanBasis span = zero_product_span(alg, 1);
  const MapFamily prefix = MapFamily::identity(alg.dim(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_level(assemble_level_system(alg, prefix, 1, span)).dimension());
  state.SetLabel(alg.name());
}
BENCHMARK(BM_SolveLevel1)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_HigherDerivationCheck(benchmark::State& state) {
  const Algebra alg = algebra_for(static_cast<int>(state.range(0)));
  Rng rng(5);
  GeneratorSequence gens;
  for (int n = 0; n < 4; ++n) gens.gens.push_back(random_element(alg, rng));
  const MapFamily f = inner_higher(alg, gens);
  for (auto _ : state) benchmark::DoNotOptimize(is_higher_derivation(alg, f).ok);
  state.SetLabel(alg.name());
}
BENCHMARK(BM_HigherDerivationCheck)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_DecomposeLevel3(benchmark::State& state) {
  const Algebra alg = algebra_for(static_cast<int>(state.range(0)));
  Rng rng(6);
  GeneratorSequence gens;
  for (int n = 0; n < 3; ++n) gens.gens.push_back(random_element(alg, rng));
  const MapFamily f = inner_higher(alg, gens);
  const auto pairs = sample_zero_product_pairs(alg, 50, 2);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_family(alg, f, pairs).blocks.size());
  state.SetLabel(alg.name());
}
BENCHMARK(BM_DecomposeLevel3)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
