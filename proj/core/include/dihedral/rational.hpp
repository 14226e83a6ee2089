#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dihedral {

// Exact rational, always normalized (gcd(num,den)=1, den>0). Group
// invariants like a(G) must support exact equality, so no floating point.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d)
    {
        if (den == 0)
            throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend bool operator==(const Rational&, const Rational&) = default;

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

} // namespace dihedral
