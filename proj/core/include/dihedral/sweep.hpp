#pragma once

#include <cstdint>
#include <vector>

#include "dihedral/class_group.hpp"
#include "dihedral/quad_arith.hpp"

namespace dihedral {

struct SweepOptions {
    int workers = 0;             // 0 = hardware concurrency
    uint64_t segment = 0;        // 0 = pick per sign
    // incremented once per computed record (resume tests hook this)
    std::function<void()> on_record;
};

// Class-group records for every fundamental D of one sign with
// lo_abs <= |D| <= hi_abs, ascending |D|. The result is independent of the
// worker count and segment size.
std::vector<DiscriminantRecord> sweep_records(Sign sign, uint64_t lo_abs, uint64_t hi_abs,
                                              const SweepOptions& opts = {});

} // namespace dihedral

#include "dihedral/cache_store.hpp"

namespace dihedral {

// Sweeps only the gaps of the store over [1, hi_abs] and appends them;
// already-covered ranges are not recomputed.
void ensure_coverage(CacheStore& store, Sign sign, uint64_t hi_abs,
                     const SweepOptions& opts = {});

} // namespace dihedral
