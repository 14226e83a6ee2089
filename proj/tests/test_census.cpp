#include "doctest.h"

#include <cmath>

#include "dihedral/census.hpp"
#include "dihedral/errors.hpp"
#include "dihedral/sweep.hpp"

using namespace dihedral;

namespace {

// one shared table over |D| <= 4000, both signs
const RankTable& table4000()
{
    static RankTable t = [] {
        auto neg = sweep_records(Sign::negative, 1, 4000);
        auto pos = sweep_records(Sign::positive, 1, 4000);
        return RankTable(std::move(neg), 4000, std::move(pos), 4000);
    }();
    return t;
}

} // namespace

TEST_CASE("psi pair validity")
{
    CHECK(psi_pair_valid(-23, 1, 3));
    CHECK_FALSE(psi_pair_valid(-23, 4, 3));
    CHECK(psi_pair_valid(-15, 5, 5));
    CHECK_FALSE(psi_pair_valid(-15, 3, 5));
    CHECK_FALSE(psi_pair_valid(-25, 1, 3)); // not fundamental
    CHECK(psi_pair_valid(-3, 3, 3));        // gcd 3 is a power of ell
    CHECK_FALSE(psi_pair_valid(-15, 15, 3));
    CHECK_FALSE(psi_pair_valid(-23, 0, 3));
}

TEST_CASE("pair discriminants")
{
    auto d = pair_discriminants({-23, 1, 3});
    CHECK(d.abs_d_n == 12167);
    CHECK(d.abs_d_k == 23);

    d = pair_discriminants({5, 2, 3});
    CHECK(d.abs_d_n == 2000);
    CHECK(d.abs_d_k == 40);

    d = pair_discriminants({-3, 1, 5});
    CHECK(d.abs_d_n == 243);
    CHECK(d.abs_d_k == 9);

    CHECK_THROWS_AS(pair_discriminants({-23, 4, 3}), std::invalid_argument);

    // both formulas recomputed directly from (a, b, ell)
    for (int64_t a : {-23ll, 5ll, -120ll}) {
        for (uint64_t b : {1ull, 7ull}) {
            for (uint32_t ell : {3u, 5u, 7u}) {
                if (!psi_pair_valid(a, b, ell))
                    continue;
                auto pd = pair_discriminants({a, b, ell});
                mpz_class aa(std::to_string(a < 0 ? -a : a)), bb{int(b)}, e1, e2;
                mpz_pow_ui(e1.get_mpz_t(), aa.get_mpz_t(), ell);
                mpz_pow_ui(e2.get_mpz_t(), bb.get_mpz_t(), 2 * (ell - 1));
                CHECK(pd.abs_d_n == e1 * e2);
                mpz_pow_ui(e1.get_mpz_t(), aa.get_mpz_t(), (ell - 1) / 2);
                mpz_pow_ui(e2.get_mpz_t(), bb.get_mpz_t(), ell);
                CHECK(pd.abs_d_k == e1 * e2);
            }
        }
    }
}

TEST_CASE("fiber bound values and monotonicity")
{
    CHECK(fiber_bound(3, 0, 0) == 0);
    CHECK(fiber_bound(3, 1, 0) == 2);
    CHECK(fiber_bound(5, 1, 1) == 12);
    for (uint32_t ell : {3u, 5u, 7u}) {
        CHECK(fiber_bound(ell, 0, 0) == 0);
        for (uint32_t r = 0; r < 4; ++r)
            for (uint32_t w = 0; w < 4; ++w) {
                CHECK(fiber_bound(ell, r + 1, w) >= fiber_bound(ell, r, w));
                CHECK(fiber_bound(ell, r, w + 1) >= fiber_bound(ell, r, w));
            }
    }
    // non-rational ground data scales the prefactor
    CHECK(fiber_bound(3, 1, 0, {1, 2}) == 16);
}

TEST_CASE("micro ground truth for Y")
{
    const auto& t = table4000();
    CHECK(count_unramified_y(3, 3, 23, t).count == 1);
    CHECK(count_unramified_y(3, 3, 22, t).count == 0);
    CHECK(count_unramified_y(3, 6, 12167, t).count == 1);
    CHECK(count_unramified_y(3, 6, 12166, t).count == 0);
}

TEST_CASE("Y agrees with a direct class-group fold and is monotone")
{
    const auto& t = table4000();
    u128 prev = 0;
    for (uint64_t x = 3; x <= 300; ++x) {
        auto y = count_unramified_y(3, 3, x, t);
        u128 direct = 0;
        for (int64_t D : fundamental_discriminants(x, Sign::both)) {
            int r = ell_rank(class_group(D), 3);
            uint64_t pw = 1;
            for (int i = 0; i < r; ++i)
                pw *= 3;
            direct += (pw - 1) / 2;
        }
        CHECK(y.count == direct);
        CHECK(y.count >= prev);
        prev = y.count;
    }
}

TEST_CASE("upper bound sum: frozen micro value and dominance")
{
    const auto& t = table4000();
    CHECK(upper_bound_sum(3, 6, 12167, t).count == 35);
    for (u128 x : {100ull, 1000ull, 2500ull}) {
        auto y = count_unramified_y(3, 3, x, t);
        auto u = upper_bound_sum(3, 3, x, t);
        CHECK(2 * y.count <= u.count);
    }
    for (u128 x : {12167ull, 50000ull, 1000000ull}) {
        auto y = count_unramified_y(3, 6, x, t);
        auto u = upper_bound_sum(3, 6, x, t);
        CHECK(2 * y.count <= u.count);
    }
    // empty sums below the first discriminant
    CHECK(upper_bound_sum(3, 6, 26, t).count == 0);
}

TEST_CASE("upper bound sum rejects insufficient coverage")
{
    const auto& t = table4000();
    CHECK_THROWS_AS(count_unramified_y(3, 3, 5000, t), CoverageError);
    CHECK_THROWS_AS(upper_bound_sum(3, 6, u128(4001) * 4001 * 4001, t), CoverageError);
}

TEST_CASE("upper bound sums scale no faster than the target exponent")
{
    const auto& t = table4000();
    // degree 6: doubling x^(1/3) (x -> 64x) may grow the sum by at most 2*2^2
    for (u128 x : {u128(1000000000ull), u128(60000000ull), u128(300000000ull)}) {
        auto a = upper_bound_sum(3, 6, x, t).count;
        auto b = upper_bound_sum(3, 6, 64 * x, t).count;
        REQUIRE(a > 0);
        CHECK(b >= a);
        CHECK(double((uint64_t)b) / double((uint64_t)a) <= 2.0 * 4.0);
    }
    // degree 3 analog with exponent 1: ratio at most 2*64
    for (u128 x : {u128(40ull), u128(60ull)}) {
        auto a = upper_bound_sum(3, 3, x, t).count;
        auto b = upper_bound_sum(3, 3, 62 * x, t).count;
        REQUIRE(a > 0);
        CHECK(b >= a);
        CHECK(double((uint64_t)b) / double((uint64_t)a) <= 2.0 * 62.0);
    }
}

TEST_CASE("sum ratio below the first discriminant is zero on an empty numerator")
{
    const auto& t = table4000();
    CHECK(cohen_lenstra_sum_ratio(3, Sign::negative, 2, t) == 0.0);
    CHECK(t.count(Sign::negative, 2) == 0);
}

TEST_CASE("series constant partials and tail bounds")
{
    auto b1 = series_constant(3, 1);
    CHECK(b1.partial == 1.0);
    CHECK(b1.tail_bound > 0);

    auto b10 = series_constant(3, 10);
    double expect = 1 + 3 / std::pow(2.0, 4.0 / 3) + 3 / std::pow(3.0, 4.0 / 3) +
                    3 / std::pow(5.0, 4.0 / 3) + 9 / std::pow(6.0, 4.0 / 3) +
                    3 / std::pow(7.0, 4.0 / 3) + 9 / std::pow(10.0, 4.0 / 3);
    CHECK(b10.partial == doctest::Approx(expect).epsilon(1e-12));

    auto b100 = series_constant(3, 100);
    auto b1000 = series_constant(3, 1000);
    auto b10000 = series_constant(3, 10000);
    CHECK(b100.partial < b1000.partial);
    CHECK(b1000.partial < b10000.partial);
    CHECK(b1000.partial - b100.partial < b100.tail_bound);
    CHECK(b10000.partial - b1000.partial < b1000.tail_bound);
    CHECK(b100.partial + b100.tail_bound >= b1000.partial + b1000.tail_bound);
    CHECK(b1000.partial + b1000.tail_bound >= b10000.partial + b10000.tail_bound);
}

TEST_CASE("cohen-lenstra averages against a direct fold")
{
    const auto& t = table4000();
    for (Sign sign : {Sign::negative, Sign::positive}) {
        auto avg = cohen_lenstra_average(3, sign, 100, t);
        uint64_t excess = 0, n = 0;
        for (int64_t D : fundamental_discriminants(100, sign)) {
            int r = ell_rank(class_group(D), 3);
            uint64_t pw = 1;
            for (int i = 0; i < r; ++i)
                pw *= 3;
            excess += pw - 1;
            ++n;
        }
        CHECK(avg.count == n);
        CHECK(avg.excess_sum == excess);
        CHECK(avg.average == doctest::Approx(double(excess) / double(n)));
    }
    // ratio path
    double ratio = cohen_lenstra_sum_ratio(3, Sign::negative, 4000, t);
    CHECK(ratio > 0);
    CHECK(ratio == doctest::Approx(double(t.sum_pow(3, Sign::negative, 4000)) / 4000.0));
}

TEST_CASE("unconditional bound check")
{
    const auto& t = table4000();
    auto rep = unconditional_bound_check(3, 4000, t);
    CHECK(rep.checked == t.records(Sign::negative).size() + t.records(Sign::positive).size());
    CHECK(rep.max_ratio > 0);
    CHECK(rep.max_ratio < 1.0);

    // a tampered record h=2, r3=1 must hard-fail
    DiscriminantRecord bad;
    bad.D = -23;
    bad.h = 2;
    bad.divisors = {2};
    bad.ranks = {1, 0, 0, 0, 0};
    RankTable tampered({bad}, 100, {}, 100);
    CHECK_THROWS_AS(unconditional_bound_check(3, 100, tampered), InvariantViolation);
}

TEST_CASE("exponent fit on synthetic power laws")
{
    std::vector<CensusPoint> pts;
    for (int k = 3; k <= 18; k += 3) {
        u128 x = 1;
        for (int i = 0; i < k; ++i)
            x *= 10;
        u128 c = 4;
        for (int i = 0; i < k / 3; ++i)
            c *= 10;
        pts.push_back({x, c, CountKind::y_count});
    }
    auto fit = exponent_fit(pts);
    CHECK(fit.slope == doctest::Approx(1.0 / 3).epsilon(1e-9));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.x_min == doctest::Approx(1e3));
    CHECK(fit.x_max == doctest::Approx(1e18));

    std::vector<CensusPoint> flat;
    for (u128 x : {100ull, 10000ull, 1000000ull})
        flat.push_back({x, 7, CountKind::y_count});
    CHECK(exponent_fit(flat).slope == doctest::Approx(0.0));

    std::vector<CensusPoint> narrow{{100, 1, CountKind::y_count},
                                    {200, 2, CountKind::y_count},
                                    {400, 3, CountKind::y_count}};
    CHECK_THROWS_AS(exponent_fit(narrow), std::invalid_argument);
    std::vector<CensusPoint> few{{100, 1, CountKind::y_count},
                                 {100000, 2, CountKind::y_count}};
    CHECK_THROWS_AS(exponent_fit(few), std::invalid_argument);
}
