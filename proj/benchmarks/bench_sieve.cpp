#include <benchmark/benchmark.h>

#include "dihedral/quad_arith.hpp"

using namespace dihedral;

namespace {

void BM_fundamental_block(benchmark::State& state)
{
    for (auto _ : state) {
        uint64_t n = 0;
        for_each_fundamental(1000000, 1000000 + uint64_t(state.range(0)), Sign::both,
                             [&](int64_t) { ++n; });
        benchmark::DoNotOptimize(n);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_fundamental_block)->Arg(1 << 16)->Unit(benchmark::kMicrosecond);

void BM_kronecker(benchmark::State& state)
{
    int64_t D = -87654299;
    uint64_t n = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kronecker(D, n));
        n += 2;
    }
}
BENCHMARK(BM_kronecker);

void BM_omega_table(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(omega_table(uint64_t(state.range(0))));
}
BENCHMARK(BM_omega_table)->Arg(100000)->Unit(benchmark::kMicrosecond);

} // namespace
