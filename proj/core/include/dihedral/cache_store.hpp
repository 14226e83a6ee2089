#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dihedral/class_group.hpp"
#include "dihedral/errors.hpp"
#include "dihedral/quad_arith.hpp"

namespace dihedral {

// Two runs produced different records for the same discriminant: upstream
// nondeterminism, never tolerated.
struct ConflictError : InvariantViolation {
    using InvariantViolation::InvariantViolation;
};

// Persistent store of sweep records. One fixed-width binary data file per
// sign plus a human-readable manifest with coverage intervals and CRC-64
// checksums. Data files are replaced atomically (tmp + rename) and the
// manifest is written last, so the manifest never references unverified
// bytes; a mismatching checksum on open discards that sign's data.
class CacheStore {
public:
    explicit CacheStore(std::filesystem::path dir);

    const std::filesystem::path& directory() const { return dir_; }

    // closed intervals of |D|, sorted, disjoint
    const std::vector<std::pair<uint64_t, uint64_t>>& coverage(Sign sign) const;
    bool covers(Sign sign, uint64_t lo_abs, uint64_t hi_abs) const;
    uint64_t contiguous_coverage_from(Sign sign, uint64_t lo_abs) const;

    // Adds the records of a sweep over |D| in [lo_abs, hi_abs]. The list
    // must be sorted, complete (one record per fundamental |D| in range)
    // and agree with existing data on any overlap; re-appending covered
    // data is a no-op.
    void append(Sign sign, uint64_t lo_abs, uint64_t hi_abs,
                const std::vector<DiscriminantRecord>& records);

    // Records with |D| in [lo_abs, hi_abs]; the range must be covered.
    std::vector<DiscriminantRecord> query(Sign sign, uint64_t lo_abs, uint64_t hi_abs) const;

    std::size_t record_count(Sign sign) const;

    // D,h,divisors,r3,r5,r7,r11,r13 rows ordered by |D|, negative first on ties.
    void export_csv(std::ostream& out) const;

private:
    struct SignData {
        std::vector<DiscriminantRecord> records; // sorted by |D|
        std::vector<std::pair<uint64_t, uint64_t>> intervals;
    };

    SignData& side(Sign sign);
    const SignData& side(Sign sign) const;
    void load();
    void persist() const;

    std::filesystem::path dir_;
    SignData neg_;
    SignData pos_;
};

} // namespace dihedral
