#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dihedral {

using u128 = unsigned __int128;
using i128 = __int128;

std::string to_string(u128 v);
std::string to_string(i128 v);

// Parses a nonnegative decimal or scientific integer ("12345", "1e9", "2.5e3"
// as long as the value is integral). Returns nullopt on malformed input or
// overflow.
std::optional<u128> parse_u128(std::string_view s);

uint64_t isqrt_u64(uint64_t n);

// base^exp, clamped to u128 max on overflow (returns nullopt instead).
std::optional<u128> checked_pow_u128(u128 base, unsigned exp);

} // namespace dihedral
