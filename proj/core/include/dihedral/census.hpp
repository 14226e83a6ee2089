#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dihedral/cache_store.hpp"
#include "dihedral/class_group.hpp"
#include "dihedral/quad_arith.hpp"
#include "dihedral/wide.hpp"

namespace dihedral {

// Ground field data entering the fiber bound; the rationals have unit rank 0
// and trivial 2-part, so the prefactor is 2.
struct GroundFieldParams {
    uint32_t unit_rank = 0;
    uint32_t class_group_two_rank = 0;
};

// (a_disc, b) is admissible when a_disc is fundamental, b is squarefree and
// gcd(|a_disc|, b) is a power of ell (1 allowed).
bool psi_pair_valid(int64_t a_disc, uint64_t b, uint32_t ell);

struct PsiPair {
    int64_t a_disc = 0;
    uint64_t b = 1;
    uint32_t ell = 3;
};

struct PairDiscriminants {
    mpz_class abs_d_n; // |a|^ell * b^(2(ell-1))
    mpz_class abs_d_k; // |a|^d   * b^ell, d = (ell-1)/2
};
PairDiscriminants pair_discriminants(const PsiPair& p);

// 2^(rk2+ru+1) * (ell^(r+omega_b) - 1)/(ell - 1)
uint64_t fiber_bound(uint32_t ell, uint32_t r, uint32_t omega_b,
                     const GroundFieldParams& k = {});

// In-memory view of cached records with per-prime prefix sums; all census
// folds run against this table and fail on insufficient coverage.
class RankTable {
public:
    RankTable(std::vector<DiscriminantRecord> neg, uint64_t neg_covered_hi,
              std::vector<DiscriminantRecord> pos, uint64_t pos_covered_hi);

    // loads records for |D| <= hi_abs from a cache (coverage-checked)
    static RankTable load(const CacheStore& store, uint64_t neg_hi, uint64_t pos_hi);

    uint64_t covered_hi(Sign sign) const;
    uint64_t count(Sign sign, uint64_t bound_abs) const;
    uint64_t sum_pow(uint32_t ell, Sign sign, uint64_t bound_abs) const;
    const std::vector<DiscriminantRecord>& records(Sign sign) const;

private:
    struct Side {
        std::vector<DiscriminantRecord> recs;
        std::vector<uint64_t> abs;                          // |D| ascending
        std::array<std::vector<uint64_t>, 5> prefix;        // prefix sums of ell^r
        uint64_t covered_hi = 0;
    };
    static Side build(std::vector<DiscriminantRecord> recs, uint64_t covered_hi);
    const Side& side(Sign sign) const;
    Side neg_, pos_;
};

struct ClAverage {
    double average = 0;     // mean of ell^r - 1
    uint64_t excess_sum = 0; // sum of (ell^r - 1)
    uint64_t count = 0;      // number of fundamental discriminants
};

// Mean of ell^{r_D}-1 over fundamental discriminants of one sign, |D| <= X.
ClAverage cohen_lenstra_average(uint32_t ell, Sign sign, uint64_t X, const RankTable& t);

// (sum of ell^{r_D} over |D| <= X) / X, the linear-growth proxy.
double cohen_lenstra_sum_ratio(uint32_t ell, Sign sign, uint64_t X, const RankTable& t);

enum class CountKind { y_count, upper_sum, lower_bound, z_estimate };

struct CensusPoint {
    u128 x = 0;
    u128 count = 0;
    CountKind kind = CountKind::y_count;
};

struct SignedCount {
    u128 negative = 0;
    u128 positive = 0;
    u128 total() const { return negative + positive; }
};

// Count of unramified dihedral extensions with discriminant <= x: the exact
// sum of (ell^{r_D}-1)/(ell-1) over |D|^ell <= x (degree 2*ell) or
// |D|^d <= x (degree ell, d = (ell-1)/2), both signs.
SignedCount count_unramified_y_parts(uint32_t ell, uint32_t degree, u128 x,
                                     const RankTable& t);
CensusPoint count_unramified_y(uint32_t ell, uint32_t degree, u128 x, const RankTable& t);

// Sum of ell^(omega(b)+r_D) over admissible pairs with
// |D|^ell b^(2(ell-1)) <= x (degree 2*ell) or |D|^d b^(ell-1) <= x
// (degree ell). Dominates (ell-1) * Z along the upper-bound chain.
SignedCount upper_bound_sum_parts(uint32_t ell, uint32_t degree, u128 x,
                                  const RankTable& t);
CensusPoint upper_bound_sum(uint32_t ell, uint32_t degree, u128 x, const RankTable& t);

struct SeriesBracket {
    double partial = 0;     // sum over squarefree b <= B of ell^omega(b) / b^s
    double tail_bound = 0;  // rigorous bound on the remainder
    double majorant = 0;    // Euler-product constant K used in the tail bound
    double epsilon = 0.1;   // documented exponent shift
};
// s = 2(ell-1)/ell; tail bound K * B^(-eps) with
// K = prod_p (1 + ell p^(eps-s)), rigorously truncated.
SeriesBracket series_constant(uint32_t ell, uint64_t B);

struct BoundReport {
    uint64_t checked = 0;
    double max_ratio = 0;   // max of h / (sqrt|D| log|D|)
    int64_t argmax_d = 0;
};
// Verifies ell^{r_D} <= h(D) for every record with |D| <= X (hard error
// otherwise) and reports the largest h / (sqrt|D| log|D|).
BoundReport unconditional_bound_check(uint32_t ell, uint64_t X, const RankTable& t);

struct FitResult {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    double x_min = 0;
    double x_max = 0;
};
// Least squares on (log x, log count) over points with count > 0; needs at
// least 3 such points spanning two decades in x.
FitResult exponent_fit(const std::vector<CensusPoint>& points);

} // namespace dihedral
