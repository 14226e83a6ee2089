#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dihedral {

// A census operation asked for discriminant data outside the certified
// coverage of the record cache.
struct CoverageError : std::runtime_error {
    CoverageError(std::string msg, uint64_t lo, uint64_t hi)
        : std::runtime_error(std::move(msg)), missing_lo(lo), missing_hi(hi)
    {
    }
    uint64_t missing_lo;
    uint64_t missing_hi;
};

// Two computations of the same record disagreed, or a stored mathematical
// invariant failed. Always a hard error.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dihedral
