#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "dihedral/binary_form.hpp"

namespace dihedral {

// Odd primes whose class-group ranks are computed and cached per record.
inline constexpr std::array<uint32_t, 5> kRankPrimes{3, 5, 7, 11, 13};

inline constexpr uint64_t kMaxClassGroupDisc = 100'000'000;
inline constexpr uint64_t kMaxAnalyticDisc = 1'000'000;
inline constexpr uint64_t kMaxTorsionOracleDisc = 100'000;

// Abelian invariants of the form class group of discriminant D:
// divisors d_1 | d_2 | ... | d_t (each > 1, ascending, product = h).
// For D > 0 this is the narrow class group.
struct ClassGroupStructure {
    int64_t D = 0;
    uint64_t h = 1;
    std::vector<uint32_t> divisors;
};

// One cached sweep row: h, divisors and the ell-rank for each prime in
// kRankPrimes.
struct DiscriminantRecord {
    int64_t D = 0;
    uint64_t h = 1;
    std::vector<uint32_t> divisors;
    std::array<uint8_t, 5> ranks{};

    friend bool operator==(const DiscriminantRecord&, const DiscriminantRecord&) = default;
};

// Number of elementary divisors divisible by ell (= rk_ell of Cl/Cl^ell).
int ell_rank(const ClassGroupStructure& s, uint32_t ell);

// Form class group of a fundamental discriminant, |D| <= kMaxClassGroupDisc.
// D < 0: count of reduced forms plus Sylow decompositions through Gauss
// composition. D > 0: cycles of reduced indefinite forms (narrow group).
ClassGroupStructure class_group(int64_t D);

DiscriminantRecord make_record(const ClassGroupStructure& s);

// Dirichlet class number formula, exact character sums. D < 0: the finite
// sum h = w/(2|D|) |sum a*chi(a)|. D > 0: h = L(1,chi)*sqrt(D)/(2R) with the
// regulator from the continued fraction of (b0+sqrt(D))/2 and L(1,chi) from
// the closed log-sin sum; rounded with a 0.25 guard. Returns the wide class
// number; |D| <= kMaxAnalyticDisc.
uint64_t class_number_analytic(int64_t D);

// Counts reduced forms killed by ell under literal repeated composition;
// the count must be a power of ell (else the composition is broken) and its
// exponent is rk_ell. D < 0, |D| <= kMaxTorsionOracleDisc.
int ell_rank_torsion_oracle(int64_t D, uint32_t ell);

namespace detail {

struct RealUnitInfo {
    long double regulator = 0;
    int unit_norm = 1; // norm of the fundamental unit, +1 or -1
    uint64_t period = 0;
};
RealUnitInfo real_quadratic_unit(int64_t D);

uint64_t count_reduced_definite(int64_t D);

// Abelian structure (ascending elementary divisors) of a group of known
// order h given by opaque element handles. for_each_generator feeds
// candidate generators to the visitor until it returns true.
std::vector<uint32_t>
abelian_divisors(uint64_t h, uint64_t identity,
                 const std::function<uint64_t(uint64_t, uint64_t)>& mul,
                 const std::function<void(const std::function<bool(uint64_t)>&)>& for_each_generator);

// handle <-> reduced definite form (c is implied by D)
inline uint64_t definite_key(const Form& f)
{
    return (uint64_t(uint32_t(f.a)) << 32) | uint32_t(int32_t(f.b));
}
Form definite_unkey(uint64_t k, int64_t D);

std::vector<uint32_t> definite_divisors(int64_t D, uint64_t h);

// Cycle table for one positive discriminant: the a > 0 half of the reduced
// forms, partitioned into rho^2 cycles. Class arithmetic works on cycle ids.
struct IndefiniteTable {
    int64_t D = 0;
    int64_t sqrt_d = 0;
    std::vector<Form> forms;   // a > 0, sorted by (a, b)
    std::vector<uint32_t> cyc; // cycle id per form
    uint32_t ncycles = 0;
    std::vector<uint32_t> rep; // per cycle: index of its least form
    uint32_t principal = 0;

    uint32_t class_of(Form reduced) const;
    uint32_t mul(uint32_t x, uint32_t y) const;
};

IndefiniteTable build_indefinite_table(int64_t D, std::vector<Form> half_forms_sorted);
std::vector<Form> indefinite_half_forms(int64_t D);
std::vector<uint32_t> indefinite_divisors(const IndefiniteTable& tab);

} // namespace detail

} // namespace dihedral
