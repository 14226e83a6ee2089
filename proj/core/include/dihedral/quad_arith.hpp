#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace dihedral {

enum class Sign { negative, positive, both };

// Kronecker symbol (D/n), completely multiplicative in n, n >= 0.
int kronecker(int64_t D, uint64_t n);

// D == 1 mod 4 squarefree (D != 1), or D = 4m with m == 2,3 mod 4 squarefree.
bool is_fundamental(int64_t D);

// Deterministic Miller-Rabin, valid for all 64-bit n.
bool is_prime(uint64_t n);

// (prime, exponent) pairs, ascending. Trial division + Brent rho.
std::vector<std::pair<uint64_t, int>> factorize(uint64_t n);

// Number of distinct prime factors.
int omega(uint64_t n);

std::vector<uint32_t> primes_up_to(uint32_t n);

// flags[i] says lo+i is squarefree, for the half-open range [lo, hi).
std::vector<uint8_t> squarefree_flags(uint64_t lo, uint64_t hi);

// All squarefree 1 <= b <= B, ascending.
std::vector<uint64_t> squarefree_numbers(uint64_t B);

// omega(n) for all n <= B, as a dense table (index 0 unused).
std::vector<uint8_t> omega_table(uint64_t B);

inline constexpr uint64_t kDefaultSieveBlock = uint64_t(1) << 20;

namespace detail {
void for_each_fundamental_impl(uint64_t lo_abs, uint64_t hi_abs, Sign sign,
                               uint64_t block,
                               const std::function<void(int64_t)>& fn);

// flags[N-lo] says that sign*N is a fundamental discriminant, N in [lo, hi).
std::vector<uint8_t> fundamental_flags(uint64_t lo, uint64_t hi, bool negative);
} // namespace detail

// Fundamental discriminants with lo_abs <= |D| <= hi_abs in increasing |D|,
// a tie between -N and +N (possible when N == 8 mod 16) emitted negative
// first. Segmented squarefree sieve, no per-element trial division.
template <class F>
void for_each_fundamental(uint64_t lo_abs, uint64_t hi_abs, Sign sign, F&& fn,
                          uint64_t block = kDefaultSieveBlock)
{
    detail::for_each_fundamental_impl(lo_abs, hi_abs, sign, block,
                                      std::function<void(int64_t)>(std::forward<F>(fn)));
}

// All fundamental D with |D| <= X of the requested sign.
std::vector<int64_t> fundamental_discriminants(uint64_t X, Sign sign);

} // namespace dihedral
