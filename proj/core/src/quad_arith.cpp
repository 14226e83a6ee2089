#include "dihedral/quad_arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dihedral/wide.hpp"

namespace dihedral {

int kronecker(int64_t D, uint64_t n)
{
    if (n == 0)
        return (D == 1 || D == -1) ? 1 : 0;
    if ((D & 1) == 0 && (n & 1) == 0)
        return 0;
    int k = 1;
    // factor 2s out of n; each contributes (D/2)
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v & 1) {
        int m8 = int(((D % 8) + 8) % 8);
        if (m8 == 3 || m8 == 5)
            k = -k;
    }
    // n odd now; (D/n) only depends on D mod n
    uint64_t a = uint64_t(((D % int64_t(n)) + int64_t(n)) % int64_t(n));
    uint64_t b = n;
    while (a != 0) {
        v = 0;
        while ((a & 1) == 0) {
            a >>= 1;
            ++v;
        }
        if (v & 1) {
            uint64_t m8 = b % 8;
            if (m8 == 3 || m8 == 5)
                k = -k;
        }
        if ((a % 4) == 3 && (b % 4) == 3)
            k = -k;
        uint64_t t = b % a;
        b = a;
        a = t;
    }
    return b == 1 ? k : 0;
}

bool is_prime(uint64_t n)
{
    if (n < 2)
        return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0)
            return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto mulmod = [n](uint64_t a, uint64_t b) { return uint64_t(u128(a) * b % n); };
    auto powmod = [&](uint64_t a, uint64_t e) {
        uint64_t r = 1;
        while (e) {
            if (e & 1)
                r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    // deterministic base set for 64-bit inputs
    for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        a %= n;
        if (a == 0)
            continue;
        uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1)
            continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

namespace {

uint64_t brent_rho(uint64_t n)
{
    if ((n & 1) == 0)
        return 2;
    auto mulmod = [n](uint64_t a, uint64_t b) { return uint64_t(u128(a) * b % n); };
    for (uint64_t c = 1;; ++c) {
        auto f = [&](uint64_t x) { return (mulmod(x, x) + c) % n; };
        uint64_t x = 2, y = 2, d = 1;
        uint64_t power = 1, lam = 1;
        while (d == 1) {
            if (power == lam) {
                x = y;
                power <<= 1;
                lam = 0;
            }
            y = f(y);
            ++lam;
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n)
            return d;
    }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    uint64_t d = brent_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n)
{
    std::vector<uint64_t> fs;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
        while (n % p == 0) {
            fs.push_back(p);
            n /= p;
        }
    }
    if (n > 1)
        factor_rec(n, fs);
    std::sort(fs.begin(), fs.end());
    std::vector<std::pair<uint64_t, int>> out;
    for (uint64_t p : fs) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

int omega(uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("omega(0)");
    return int(factorize(n).size());
}

bool is_fundamental(int64_t D)
{
    if (D == 0 || D == 1)
        return false;
    auto squarefree = [](uint64_t n) {
        for (const auto& [p, e] : factorize(n))
            if (e > 1)
                return false;
        return true;
    };
    int64_t r = ((D % 4) + 4) % 4;
    if (r == 1)
        return squarefree(uint64_t(D < 0 ? -D : D));
    if (r != 0)
        return false;
    int64_t m = D / 4;
    int64_t mr = ((m % 4) + 4) % 4;
    if (mr != 2 && mr != 3)
        return false;
    return squarefree(uint64_t(m < 0 ? -m : m));
}

std::vector<uint32_t> primes_up_to(uint32_t n)
{
    std::vector<uint8_t> comp(std::size_t(n) + 1, 0);
    std::vector<uint32_t> primes;
    for (uint32_t i = 2; i <= n; ++i) {
        if (comp[i])
            continue;
        primes.push_back(i);
        for (uint64_t j = uint64_t(i) * i; j <= n; j += i)
            comp[j] = 1;
    }
    return primes;
}

std::vector<uint8_t> squarefree_flags(uint64_t lo, uint64_t hi)
{
    if (hi <= lo)
        return {};
    std::vector<uint8_t> flags(hi - lo, 1);
    if (lo == 0)
        flags[0] = 0;
    uint64_t root = isqrt_u64(hi - 1);
    auto primes = primes_up_to(uint32_t(std::min<uint64_t>(root, 0xFFFFFFFFull)));
    for (uint32_t p : primes) {
        uint64_t p2 = uint64_t(p) * p;
        uint64_t first = ((lo + p2 - 1) / p2) * p2;
        for (uint64_t m = first; m < hi; m += p2)
            flags[m - lo] = 0;
    }
    return flags;
}

std::vector<uint64_t> squarefree_numbers(uint64_t B)
{
    if (B < 1)
        throw std::invalid_argument("squarefree_numbers: B >= 1 required");
    auto flags = squarefree_flags(1, B + 1);
    std::vector<uint64_t> out;
    for (uint64_t b = 1; b <= B; ++b)
        if (flags[b - 1])
            out.push_back(b);
    return out;
}

std::vector<uint8_t> omega_table(uint64_t B)
{
    std::vector<uint8_t> w(B + 1, 0);
    for (uint64_t p = 2; p <= B; ++p) {
        if (w[p] != 0)
            continue; // composite, already touched by a smaller prime
        for (uint64_t m = p; m <= B; m += p)
            ++w[m];
    }
    return w;
}

namespace detail {

std::vector<uint8_t> fundamental_flags(uint64_t lo, uint64_t hi, bool negative)
{
    if (hi <= lo)
        return {};
    std::vector<uint8_t> out(hi - lo, 0);
    auto sq = squarefree_flags(lo, hi);
    uint64_t qlo = lo / 4, qhi = (hi - 1) / 4 + 1;
    auto sq4 = squarefree_flags(qlo, qhi);
    for (uint64_t N = std::max<uint64_t>(lo, 3); N < hi; ++N) {
        switch (N % 4) {
        case 3:
            if (negative)
                out[N - lo] = sq[N - lo];
            break;
        case 1:
            if (!negative)
                out[N - lo] = sq[N - lo];
            break;
        case 0: {
            uint64_t mr = (N / 4) % 4;
            bool ok = negative ? (mr == 1 || mr == 2) : (mr == 2 || mr == 3);
            if (ok)
                out[N - lo] = sq4[N / 4 - qlo];
            break;
        }
        default:
            break;
        }
    }
    return out;
}

void for_each_fundamental_impl(uint64_t lo_abs, uint64_t hi_abs, Sign sign,
                               uint64_t block,
                               const std::function<void(int64_t)>& fn)
{
    lo_abs = std::max<uint64_t>(lo_abs, 3);
    if (hi_abs < lo_abs)
        return;
    const bool want_neg = sign != Sign::positive;
    const bool want_pos = sign != Sign::negative;
    for (uint64_t seg = lo_abs; seg <= hi_abs; seg += block) {
        uint64_t lo = seg;
        uint64_t hi = std::min(hi_abs, seg + block - 1) + 1; // [lo, hi)
        auto sq = squarefree_flags(lo, hi);
        uint64_t qlo = lo / 4, qhi = (hi - 1) / 4 + 1;
        auto sq4 = squarefree_flags(qlo, qhi);
        for (uint64_t N = lo; N < hi; ++N) {
            switch (N % 4) {
            case 3:
                if (want_neg && sq[N - lo])
                    fn(-int64_t(N));
                break;
            case 1:
                if (want_pos && sq[N - lo])
                    fn(int64_t(N));
                break;
            case 0: {
                uint64_t m = N / 4;
                if (!sq4[m - qlo])
                    break;
                uint64_t mr = m % 4;
                if (want_neg && (mr == 1 || mr == 2))
                    fn(-int64_t(N));
                if (want_pos && (mr == 2 || mr == 3))
                    fn(int64_t(N));
                break;
            }
            default:
                break;
            }
        }
    }
}

} // namespace detail

std::vector<int64_t> fundamental_discriminants(uint64_t X, Sign sign)
{
    if (X < 3)
        throw std::invalid_argument("fundamental_discriminants: X >= 3 required");
    std::vector<int64_t> out;
    for_each_fundamental(3, X, sign, [&](int64_t D) { out.push_back(D); });
    return out;
}

} // namespace dihedral
