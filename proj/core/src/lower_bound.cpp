#include "dihedral/lower_bound.hpp"

#include <cmath>
#include <stdexcept>

namespace dihedral {

AuxiliaryPrimePair make_aux_pair(uint32_t ell, uint64_t p, uint64_t q)
{
    if (ell < 3 || ell % 2 == 0 || !is_prime(ell))
        throw std::invalid_argument("ell must be an odd prime");
    if (!is_prime(p) || !is_prime(q))
        throw std::invalid_argument("auxiliary primes must be prime");
    if (p == q)
        throw std::invalid_argument("auxiliary primes must be distinct");
    if (p % ell != 1 || q % ell != 1)
        throw std::invalid_argument("auxiliary primes must be 1 mod ell");
    return {ell, p, q};
}

std::vector<uint64_t> admissible_primes(uint32_t ell, uint64_t bound)
{
    if (ell < 3 || ell % 2 == 0 || !is_prime(ell))
        throw std::invalid_argument("ell must be an odd prime");
    std::vector<uint64_t> out;
    if (bound < 2)
        return out;
    for (uint32_t p : primes_up_to(uint32_t(bound)))
        if (p % ell == 1)
            out.push_back(p);
    return out;
}

bool split_condition(int64_t D, const AuxiliaryPrimePair& pair)
{
    return kronecker(D, pair.p) == 1 && kronecker(D, pair.q) == 1;
}

SignedCount count_split_quadratics(const AuxiliaryPrimePair& pair, uint64_t X, Sign sign)
{
    if (X < 3)
        throw std::invalid_argument("X must be at least 3");
    SignedCount out;
    for_each_fundamental(3, X, sign, [&](int64_t D) {
        if (!split_condition(D, pair))
            return;
        if (D < 0)
            ++out.negative;
        else
            ++out.positive;
    });
    return out;
}

RankBudget rank_budget(int64_t D, const AuxiliaryPrimePair& pair)
{
    if (!is_fundamental(D))
        throw std::invalid_argument("rank budget needs a fundamental discriminant");
    if (!split_condition(D, pair))
        throw std::invalid_argument("rank budget hypothesis fails: D is not split at p and q");
    // Two split primes give a residue ring of ell-rank 4 (two primes above
    // each, each residue field of order p with ell | p-1); the unit image
    // eats at most rank 1 and the invariant part accounts for rank 2.
    RankBudget b;
    b.minus_rank_lower = b.residue_rank - b.unit_rank_bound - b.plus_rank;
    return b;
}

SignedCount lower_bound_z_parts(uint32_t ell, const AuxiliaryPrimePair& pair,
                                uint32_t degree, u128 x)
{
    if (ell != pair.ell)
        throw std::invalid_argument("pair was built for a different ell");
    if (degree != ell && degree != 2 * ell)
        throw std::invalid_argument("degree must be ell or 2*ell");
    unsigned dexp = degree == ell ? (ell - 1) / 2 : ell;
    unsigned pqexp = degree == ell ? ell - 1 : 2 * (ell - 1);

    auto penalty = checked_pow_u128(u128(pair.p) * pair.q, pqexp);
    SignedCount out;
    if (!penalty || *penalty > x)
        return out;
    u128 budget = x / *penalty;
    // |D|^dexp <= budget
    uint64_t bound = 0;
    {
        u128 t = budget;
        long double approx = powl((long double)t, 1.0L / dexp);
        bound = uint64_t(approx);
        auto le = [&](uint64_t v) {
            auto pw = checked_pow_u128(v, dexp);
            return pw && *pw <= budget;
        };
        while (bound > 0 && !le(bound))
            --bound;
        while (le(bound + 1))
            ++bound;
    }
    if (bound < 3)
        return out;
    for_each_fundamental(3, bound, Sign::both, [&](int64_t D) {
        if (!split_condition(D, pair))
            return;
        if (D < 0)
            ++out.negative;
        else
            ++out.positive;
    });
    return out;
}

CensusPoint lower_bound_z(uint32_t ell, const AuxiliaryPrimePair& pair, uint32_t degree,
                          u128 x)
{
    return {x, lower_bound_z_parts(ell, pair, degree, x).total(), CountKind::lower_bound};
}

} // namespace dihedral
