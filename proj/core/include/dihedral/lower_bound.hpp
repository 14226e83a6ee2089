#pragma once

#include <cstdint>
#include <vector>

#include "dihedral/census.hpp"
#include "dihedral/quad_arith.hpp"
#include "dihedral/wide.hpp"

namespace dihedral {

// Two distinct auxiliary primes p, q == 1 (mod ell).
struct AuxiliaryPrimePair {
    uint32_t ell;
    uint64_t p;
    uint64_t q;
};
AuxiliaryPrimePair make_aux_pair(uint32_t ell, uint64_t p, uint64_t q);

// All primes p <= bound with p == 1 (mod ell), ascending.
std::vector<uint64_t> admissible_primes(uint32_t ell, uint64_t bound);

// kronecker(D,p) == 1 and kronecker(D,q) == 1 (ramified counts as not split).
bool split_condition(int64_t D, const AuxiliaryPrimePair& pair);

// Fundamental discriminants |D| <= X of the requested sign passing the split
// condition.
SignedCount count_split_quadratics(const AuxiliaryPrimePair& pair, uint64_t X, Sign sign);

// Rank bookkeeping certifying one dihedral extension ramified only above
// p, q: residue rank 4, unit contribution at most 1, invariant part 2, so
// the anti-invariant part has rank >= 1.
struct RankBudget {
    int residue_rank = 4;
    int unit_rank_bound = 1;
    int plus_rank = 2;
    int minus_rank_lower = 1;
};
// Throws when the hypotheses fail (D not split at the pair).
RankBudget rank_budget(int64_t D, const AuxiliaryPrimePair& pair);

// Certified lower bound for Z: counts split fundamental D (both signs) with
// |D|^d (pq)^(ell-1) <= x (degree ell) or |D|^ell (pq)^(2(ell-1)) <= x
// (degree 2*ell).
SignedCount lower_bound_z_parts(uint32_t ell, const AuxiliaryPrimePair& pair,
                                uint32_t degree, u128 x);
CensusPoint lower_bound_z(uint32_t ell, const AuxiliaryPrimePair& pair, uint32_t degree,
                          u128 x);

} // namespace dihedral
