#include "dihedral/wide.hpp"

#include <cmath>
#include <limits>

namespace dihedral {

std::string to_string(u128 v)
{
    if (v == 0)
        return "0";
    std::string s;
    while (v > 0) {
        s += char('0' + unsigned(v % 10));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

std::string to_string(i128 v)
{
    if (v < 0)
        return "-" + to_string(u128(-v));
    return to_string(u128(v));
}

std::optional<u128> parse_u128(std::string_view s)
{
    if (s.empty())
        return std::nullopt;
    constexpr u128 kMax = ~u128(0);
    u128 mant = 0;
    std::size_t i = 0;
    bool any = false;
    for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
        unsigned d = unsigned(s[i] - '0');
        if (mant > (kMax - d) / 10)
            return std::nullopt;
        mant = mant * 10 + d;
        any = true;
    }
    if (!any)
        return std::nullopt;
    long frac_digits = 0;
    if (i < s.size() && s[i] == '.') {
        ++i;
        for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
            unsigned d = unsigned(s[i] - '0');
            if (mant > (kMax - d) / 10)
                return std::nullopt;
            mant = mant * 10 + d;
            ++frac_digits;
        }
    }
    long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            neg = s[i] == '-';
            ++i;
        }
        if (i == s.size())
            return std::nullopt;
        for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
            exp10 = exp10 * 10 + (s[i] - '0');
            if (exp10 > 100)
                return std::nullopt;
        }
        if (neg)
            exp10 = -exp10;
    }
    if (i != s.size())
        return std::nullopt;
    exp10 -= frac_digits;
    if (exp10 < 0)
        return std::nullopt; // non-integral value
    while (exp10-- > 0) {
        if (mant > kMax / 10)
            return std::nullopt;
        mant *= 10;
    }
    return mant;
}

uint64_t isqrt_u64(uint64_t n)
{
    if (n == 0)
        return 0;
    auto r = uint64_t(std::sqrt(double(n)));
    while (r > 0 && r > n / r)
        --r;
    while ((r + 1) <= n / (r + 1))
        ++r;
    return r;
}

std::optional<u128> checked_pow_u128(u128 base, unsigned exp)
{
    u128 r = 1;
    constexpr u128 kMax = ~u128(0);
    while (exp > 0) {
        if (exp & 1) {
            if (base != 0 && r > kMax / base)
                return std::nullopt;
            r *= base;
        }
        exp >>= 1;
        if (exp > 0) {
            if (base != 0 && base > kMax / base)
                return std::nullopt;
            base *= base;
        }
    }
    return r;
}

} // namespace dihedral
