#include "doctest.h"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "dihedral/quad_arith.hpp"

using namespace dihedral;

namespace {

// trial-division oracle, independent of the sieve paths
bool squarefree_trial(uint64_t n)
{
    for (uint64_t p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0)
            return false;
    return n != 0;
}

bool fundamental_trial(int64_t D)
{
    if (D == 0 || D == 1)
        return false;
    int64_t r = ((D % 4) + 4) % 4;
    if (r == 1)
        return squarefree_trial(uint64_t(D < 0 ? -D : D));
    if (r != 0)
        return false;
    int64_t m = D / 4;
    int64_t mr = ((m % 4) + 4) % 4;
    return (mr == 2 || mr == 3) && squarefree_trial(uint64_t(m < 0 ? -m : m));
}

int omega_trial(uint64_t n)
{
    int w = 0;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        ++w;
        while (n % p == 0)
            n /= p;
    }
    return w + (n > 1 ? 1 : 0);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m)
{
    uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1)
            r = (unsigned __int128)(r)*a % m;
        a = (unsigned __int128)(a)*a % m;
        e >>= 1;
    }
    return r;
}

} // namespace

TEST_CASE("kronecker symbol examples")
{
    CHECK(kronecker(5, 5) == 0);
    for (uint64_t n : {1ull, 2ull, 3ull, 17ull, 100ull})
        CHECK(kronecker(1, n) == 1);
    CHECK(kronecker(-4, 3) == -1);
    CHECK(kronecker(-23, 2) == 1);  // -23 == 1 mod 8
    CHECK(kronecker(5, 2) == -1);   // 5 == 5 mod 8
    CHECK(kronecker(-3, 1) == 1);
    CHECK(kronecker(12, 2) == 0);
}

TEST_CASE("kronecker matches the Euler criterion at odd primes")
{
    auto primes = primes_up_to(300);
    for (int64_t D : {-23ll, -4ll, 5ll, 21ll, -163ll, 12ll, 8ll}) {
        for (uint32_t p : primes) {
            if (p == 2)
                continue;
            uint64_t a = uint64_t(((D % p) + p) % p);
            int expected;
            if (a == 0)
                expected = 0;
            else
                expected = powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
            CHECK(kronecker(D, p) == expected);
        }
    }
}

TEST_CASE("kronecker is completely multiplicative in the denominator")
{
    for (int64_t D : {-23ll, 5ll, -4ll, 21ll, -120ll}) {
        for (uint64_t m = 1; m <= 400; ++m)
            for (uint64_t n = 1; n <= 400; ++n)
                CHECK(kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n));
    }
}

TEST_CASE("is_fundamental examples")
{
    CHECK(is_fundamental(-3));
    CHECK_FALSE(is_fundamental(25));
    CHECK(is_fundamental(8));
    CHECK(is_fundamental(-4));
    CHECK(is_fundamental(12));
    CHECK_FALSE(is_fundamental(1));
    CHECK_FALSE(is_fundamental(0));
    CHECK_FALSE(is_fundamental(-9));
    CHECK_FALSE(is_fundamental(7)); // 7 == 3 mod 4
    CHECK(is_fundamental(-7));
}

TEST_CASE("fundamental discriminant stream examples")
{
    CHECK(fundamental_discriminants(10, Sign::negative) ==
          std::vector<int64_t>{-3, -4, -7, -8});
    CHECK(fundamental_discriminants(10, Sign::positive) == std::vector<int64_t>{5, 8});
    CHECK(fundamental_discriminants(3, Sign::both) == std::vector<int64_t>{-3});
}

TEST_CASE("fundamental stream matches trial division up to 1e5")
{
    const uint64_t X = 100000;
    std::vector<int64_t> got = fundamental_discriminants(X, Sign::both);
    std::size_t k = 0;
    for (uint64_t N = 3; N <= X; ++N) {
        if (fundamental_trial(-int64_t(N))) {
            REQUIRE(k < got.size());
            CHECK(got[k++] == -int64_t(N));
        }
        if (fundamental_trial(int64_t(N))) {
            REQUIRE(k < got.size());
            CHECK(got[k++] == int64_t(N));
        }
    }
    CHECK(k == got.size());
}

TEST_CASE("fundamental stream is order and block independent")
{
    std::vector<int64_t> a, b;
    for_each_fundamental(3, 5000, Sign::both, [&](int64_t D) { a.push_back(D); }, 64);
    for_each_fundamental(3, 5000, Sign::both, [&](int64_t D) { b.push_back(D); }, 4096);
    CHECK(a == b);
    // ties (|D| = 8 mod 16) are emitted negative first
    for (std::size_t i = 1; i < a.size(); ++i) {
        uint64_t p = uint64_t(a[i - 1] < 0 ? -a[i - 1] : a[i - 1]);
        uint64_t q = uint64_t(a[i] < 0 ? -a[i] : a[i]);
        CHECK(p <= q);
        if (p == q) {
            CHECK(a[i - 1] < 0);
            CHECK(a[i] > 0);
        }
    }
}

TEST_CASE("fundamental discriminant density stabilizes")
{
    uint64_t c1 = 0, c2 = 0;
    for_each_fundamental(3, 1000000, Sign::both, [&](int64_t) { ++c1; });
    for_each_fundamental(3, 2000000, Sign::both, [&](int64_t) { ++c2; });
    double d1 = double(c1) / 1e6, d2 = double(c2) / 2e6;
    CHECK(std::fabs(d1 - d2) / d1 < 0.01);
}

TEST_CASE("omega examples and sieve agreement")
{
    CHECK(omega(1) == 0);
    CHECK(omega(12) == 2);
    CHECK(omega(30) == 3);
    auto table = omega_table(1000000);
    for (uint64_t n = 1; n <= 1000000; n += 997) // stride keeps the runtime sane
        CHECK(int(table[n]) == omega_trial(n));
    for (uint64_t n = 1; n <= 5000; ++n)
        CHECK(omega(n) == int(table[n]));
}

TEST_CASE("squarefree numbers")
{
    CHECK(squarefree_numbers(10) == std::vector<uint64_t>{1, 2, 3, 5, 6, 7, 10});
    CHECK(squarefree_numbers(1) == std::vector<uint64_t>{1});
    CHECK(squarefree_numbers(100).size() == 61);
}

TEST_CASE("stream preconditions")
{
    CHECK_THROWS_AS(fundamental_discriminants(2, Sign::both), std::invalid_argument);
    CHECK_THROWS_AS(squarefree_numbers(0), std::invalid_argument);
}

TEST_CASE("factorize and primality")
{
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(1000003));
    CHECK_FALSE(is_prime(1000001)); // 101 * 9901
    auto f = factorize(2 * 2 * 3 * 49 * 1000003ull);
    REQUIRE(f.size() == 4);
    CHECK(f[0] == std::pair<uint64_t, int>{2, 2});
    CHECK(f[1] == std::pair<uint64_t, int>{3, 1});
    CHECK(f[2] == std::pair<uint64_t, int>{7, 2});
    CHECK(f[3] == std::pair<uint64_t, int>{1000003, 1});
}
