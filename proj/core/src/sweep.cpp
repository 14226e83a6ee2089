#include "dihedral/sweep.hpp"

#include <algorithm>
#include <stdexcept>

#include "dihedral/errors.hpp"
#include "dihedral/parallel.hpp"
#include "dihedral/wide.hpp"

namespace dihedral {

namespace {

using detail::fundamental_flags;

// counts reduced definite forms per fundamental |D| in [L, R)
std::vector<uint32_t> definite_counts(uint64_t L, uint64_t R,
                                      const std::vector<uint8_t>& fund)
{
    std::vector<uint32_t> hcount(R - L, 0);
    for (uint64_t a = 1; 3 * a * a < R; ++a) {
        for (uint64_t b = 0; b <= a; ++b) {
            uint64_t base = b * b;
            uint64_t c = std::max(a, (L + base + 4 * a - 1) / (4 * a));
            uint64_t N = 4 * a * c - base;
            for (; N < R; ++c, N += 4 * a) {
                if (!fund[N - L])
                    continue;
                hcount[N - L] += (b == 0 || b == a || c == a) ? 1 : 2;
            }
        }
    }
    return hcount;
}

std::vector<DiscriminantRecord> negative_segment(uint64_t L, uint64_t R,
                                                 const SweepOptions& opts)
{
    auto fund = fundamental_flags(L, R, true);
    auto hcount = definite_counts(L, R, fund);
    std::vector<DiscriminantRecord> out;
    for (uint64_t N = L; N < R; ++N) {
        if (!fund[N - L])
            continue;
        int64_t D = -int64_t(N);
        ClassGroupStructure s;
        s.D = D;
        s.h = hcount[N - L];
        if (s.h == 0)
            throw InvariantViolation("fundamental discriminant with no reduced forms");
        s.divisors = detail::definite_divisors(D, s.h);
        out.push_back(make_record(s));
        if (opts.on_record)
            opts.on_record();
    }
    return out;
}

std::vector<DiscriminantRecord> positive_segment(uint64_t L, uint64_t R,
                                                 const SweepOptions& opts)
{
    auto fund = fundamental_flags(L, R, false);

    struct Entry {
        uint32_t off;
        uint32_t a;
        uint32_t b;
    };
    std::vector<Entry> entries;
    for (uint64_t u = 1; (u + 1) * (u + 1) < R; ++u) {
        for (uint64_t v = 1; (u + v) * (u + v) < R; ++v) {
            uint64_t base = 4 * u * v;
            if (base >= R)
                break;
            uint64_t diff = u > v ? u - v : v - u;
            uint64_t bmin = diff + 1;
            if (L > base) {
                uint64_t need = L - base; // smallest b with b*b >= need
                uint64_t r = isqrt_u64(need);
                bmin = std::max(bmin, r * r == need ? r : r + 1);
            }
            uint64_t bmax = isqrt_u64(R - 1 - base);
            for (uint64_t b = bmin; b <= bmax; ++b) {
                uint64_t N = b * b + base;
                if (fund[N - L])
                    entries.push_back({uint32_t(N - L), uint32_t(u), uint32_t(b)});
            }
        }
    }

    // counting sort by discriminant offset
    std::vector<uint32_t> start(R - L + 1, 0);
    for (const auto& e : entries)
        ++start[e.off + 1];
    for (std::size_t i = 1; i < start.size(); ++i)
        start[i] += start[i - 1];
    std::vector<Entry> sorted(entries.size());
    {
        std::vector<uint32_t> cursor(start.begin(), start.end() - 1);
        for (const auto& e : entries)
            sorted[cursor[e.off]++] = e;
    }
    entries.clear();
    entries.shrink_to_fit();

    std::vector<DiscriminantRecord> out;
    std::vector<Form> half;
    for (uint64_t N = L; N < R; ++N) {
        if (!fund[N - L])
            continue;
        int64_t D = int64_t(N);
        half.clear();
        for (uint32_t i = start[N - L]; i < start[N - L + 1]; ++i) {
            int64_t a = sorted[i].a;
            int64_t b = sorted[i].b;
            half.push_back({a, b, int64_t((i128(b) * b - D) / (4 * a))});
        }
        std::sort(half.begin(), half.end(), [](const Form& x, const Form& y) {
            return x.a != y.a ? x.a < y.a : x.b < y.b;
        });
        if (half.empty())
            throw InvariantViolation("fundamental discriminant with no reduced forms");
        auto tab = detail::build_indefinite_table(D, std::move(half));
        half = std::vector<Form>();
        ClassGroupStructure s;
        s.D = D;
        s.h = tab.ncycles;
        s.divisors = detail::indefinite_divisors(tab);
        out.push_back(make_record(s));
        if (opts.on_record)
            opts.on_record();
    }
    return out;
}

} // namespace

std::vector<DiscriminantRecord> sweep_records(Sign sign, uint64_t lo_abs, uint64_t hi_abs,
                                              const SweepOptions& opts)
{
    if (sign == Sign::both)
        throw std::invalid_argument("sweep one sign at a time");
    lo_abs = std::max<uint64_t>(lo_abs, 3);
    if (hi_abs < lo_abs)
        return {};

    uint64_t segment = opts.segment;
    if (segment == 0) {
        if (sign == Sign::negative) {
            segment = uint64_t(1) << 17;
        } else {
            // keep per-chunk form tables near ~2e6 entries (12 B each)
            uint64_t density = std::max<uint64_t>(1, isqrt_u64(hi_abs) / 3);
            segment = std::clamp<uint64_t>(2'000'000 / density, 4096, uint64_t(1) << 17);
        }
    }

    std::vector<DiscriminantRecord> all;
    auto chunk_fn = [&](uint64_t a, uint64_t b) {
        return sign == Sign::negative ? negative_segment(a, b, opts)
                                      : positive_segment(a, b, opts);
    };
    parallel_ordered_chunks<std::vector<DiscriminantRecord>>(
        lo_abs, hi_abs + 1, segment, opts.workers, chunk_fn,
        [&](std::vector<DiscriminantRecord>&& part) {
            all.insert(all.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
        });
    return all;
}

void ensure_coverage(CacheStore& store, Sign sign, uint64_t hi_abs, const SweepOptions& opts)
{
    if (sign == Sign::both) {
        ensure_coverage(store, Sign::negative, hi_abs, opts);
        ensure_coverage(store, Sign::positive, hi_abs, opts);
        return;
    }
    uint64_t probe = 1;
    while (probe <= hi_abs) {
        uint64_t covered_to = store.contiguous_coverage_from(sign, probe);
        if (covered_to >= hi_abs)
            return;
        uint64_t gap_lo = covered_to ? covered_to + 1 : probe;
        uint64_t gap_hi = hi_abs;
        for (const auto& [a, b] : store.coverage(sign))
            if (a > gap_lo) {
                gap_hi = std::min(gap_hi, a - 1);
                break;
            }
        store.append(sign, gap_lo, gap_hi, sweep_records(sign, gap_lo, gap_hi, opts));
        probe = gap_hi + 1;
    }
}

} // namespace dihedral
