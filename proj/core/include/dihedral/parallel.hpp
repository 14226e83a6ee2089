#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace dihedral {

inline int resolve_workers(int requested)
{
    if (requested > 0)
        return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : int(hc);
}

// Splits [lo, hi) into fixed chunks, evaluates fn(chunk_lo, chunk_hi) on a
// worker pool and feeds results to consume() in ascending chunk order. The
// chunk grid depends only on (lo, hi, chunk), so results are independent of
// the worker count.
template <class Result, class Fn, class Consume>
void parallel_ordered_chunks(uint64_t lo, uint64_t hi, uint64_t chunk, int workers,
                             Fn&& fn, Consume&& consume)
{
    if (hi <= lo)
        return;
    workers = resolve_workers(workers);
    const uint64_t nchunks = (hi - lo + chunk - 1) / chunk;

    if (workers == 1 || nchunks == 1) {
        for (uint64_t i = 0; i < nchunks; ++i) {
            uint64_t a = lo + i * chunk;
            uint64_t b = a + chunk < hi ? a + chunk : hi;
            consume(fn(a, b));
        }
        return;
    }

    std::vector<Result> results(nchunks);
    std::atomic<uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            uint64_t i = next.fetch_add(1);
            if (i >= nchunks)
                return;
            uint64_t a = lo + i * chunk;
            uint64_t b = a + chunk < hi ? a + chunk : hi;
            results[i] = fn(a, b);
        }
    };
    std::vector<std::thread> pool;
    int nthreads = int(nchunks < uint64_t(workers) ? nchunks : uint64_t(workers));
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    for (uint64_t i = 0; i < nchunks; ++i)
        consume(std::move(results[i]));
}

} // namespace dihedral
