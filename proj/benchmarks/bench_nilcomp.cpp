#include <benchmark/benchmark.h>

#include <nilcomp/abelian.hpp>
#include <nilcomp/filtered.hpp>
#include <nilcomp/lift.hpp>
#include <nilcomp/unipotent.hpp>

#include <vector>

using namespace nilcomp;

namespace {

ComplexTable quadratic_phase(std::int64_t n) {
  FiniteAbelianGroup group({n});
  return ComplexTable::from_function(group, [n](const GroupElement& x) {
    Integer v = x.coords[0];
    return phase(Rational(v * v) / Rational(n));
  });
}

UnipotentMatrix sample_unipotent(std::size_t dim) {
  std::vector<Rational> entries(dim * dim, Rational(0));
  for (std::size_t i = 0; i < dim; ++i) {
    entries[i * dim + i] = 1;
    for (std::size_t j = i + 1; j < dim; ++j)
      entries[i * dim + j] = Rational(static_cast<long>(i + 2 * j) % 5 + 1) / Rational(static_cast<long>(j + 1));
  }
  return UnipotentMatrix::from_entries(dim, entries);
}

void BM_GowersU2(benchmark::State& state) {
  auto f = quadratic_phase(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gowers_norm(f, 2));
}
BENCHMARK(BM_GowersU2)->Arg(16)->Arg(64)->Arg(128);

void BM_GowersU3(benchmark::State& state) {
  auto f = quadratic_phase(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gowers_norm(f, 3));
}
BENCHMARK(BM_GowersU3)->Arg(8)->Arg(16)->Arg(32);

void BM_LogExp(benchmark::State& state) {
  auto g = sample_unipotent(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mat_exp(mat_log(g)));
}
BENCHMARK(BM_LogExp)->DenseRange(3, 7, 2);

void BM_RationalityOrder(benchmark::State& state) {
  auto dim = static_cast<std::size_t>(state.range(0));
  auto fl = FilteredLattice::lower_central(dim);
  auto g = sample_unipotent(dim);
  for (auto _ : state) benchmark::DoNotOptimize(rationality_order(fl, g));
}
BENCHMARK(BM_RationalityOrder)->DenseRange(3, 5, 1);

void BM_HeisenbergLiftSearch(benchmark::State& state) {
  auto inst = heisenberg_instance(Integer(state.range(0)), Integer(state.range(1)));
  std::vector<Integer> periods{Integer(state.range(0)), Integer(state.range(1))};
  for (auto _ : state)
    benchmark::DoNotOptimize(minimal_period_lift_search(inst.lattice, inst.map, periods));
}
BENCHMARK(BM_HeisenbergLiftSearch)->Args({2, 3})->Args({5, 7})->Args({4, 6});

}  // namespace

BENCHMARK_MAIN();
