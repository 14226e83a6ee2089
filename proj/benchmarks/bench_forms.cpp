#include <benchmark/benchmark.h>

#include "dihedral/binary_form.hpp"
#include "dihedral/class_group.hpp"
#include "dihedral/quad_arith.hpp"
#include "dihedral/sweep.hpp"

using namespace dihedral;

namespace {

void BM_compose_definite(benchmark::State& state)
{
    const int64_t D = -87654299; // fundamental, large
    auto forms = [&] {
        std::vector<Form> out;
        enumerate_reduced_definite(D, true, [&](const Form& f) {
            out.push_back(f);
            return out.size() < 64;
        });
        return out;
    }();
    std::size_t i = 0;
    for (auto _ : state) {
        const Form& f = forms[i % forms.size()];
        const Form& g = forms[(i * 7 + 3) % forms.size()];
        benchmark::DoNotOptimize(detail::compose_unchecked(f, g, D, true, 0));
        ++i;
    }
}
BENCHMARK(BM_compose_definite);

void BM_reduce_definite(benchmark::State& state)
{
    const int64_t D = -87654299;
    for (auto _ : state) {
        benchmark::DoNotOptimize(detail::reduce_definite_unchecked(4321, 12345, 0, D));
    }
}
BENCHMARK(BM_reduce_definite);

int64_t fundamental_at_least(int64_t D)
{
    while (!is_fundamental(D))
        D += D < 0 ? -1 : 1;
    return D;
}

void BM_class_group_definite(benchmark::State& state)
{
    const int64_t D = fundamental_at_least(-int64_t(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(class_group(D));
}
BENCHMARK(BM_class_group_definite)->Arg(999983)->Arg(9999999);

void BM_class_group_indefinite(benchmark::State& state)
{
    const int64_t D = fundamental_at_least(int64_t(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(class_group(D));
}
BENCHMARK(BM_class_group_indefinite)->Arg(999997);

void BM_sweep_segment(benchmark::State& state)
{
    SweepOptions opts;
    opts.workers = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sweep_records(state.range(0) < 0 ? Sign::negative : Sign::positive, 100000,
                          110000, opts));
}
BENCHMARK(BM_sweep_segment)->Arg(-1)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace
