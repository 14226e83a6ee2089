#include "doctest.h"

#include <map>

#include "dihedral/class_group.hpp"
#include "dihedral/errors.hpp"
#include "dihedral/quad_arith.hpp"
#include "dihedral/sweep.hpp"

using namespace dihedral;

TEST_CASE("reduction of definite forms")
{
    CHECK(reduce({2, -1, 3}, -23) == Form{2, -1, 3});
    CHECK(reduce({1, 0, 1}, -4) == Form{1, 0, 1});
    CHECK(reduce({1, 1, 6}, -23) == Form{1, 1, 6});
    CHECK(reduce({6, 1, 1}, -23) == Form{1, 1, 6});
    CHECK(reduce({3, 7, 6}, -23) == Form{2, -1, 3});
    CHECK_THROWS_AS(reduce({2, 2, 2}, -12), std::invalid_argument);  // imprimitive
    CHECK_THROWS_AS(reduce({1, 1, 6}, -20), std::invalid_argument);  // wrong disc
    CHECK_THROWS_AS(reduce({-1, 1, -6}, -23), std::invalid_argument); // negative definite
}

TEST_CASE("reduced form sets of small discriminants")
{
    CHECK(reduced_forms(-23) == std::vector<Form>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
    CHECK(reduced_forms(-4) == std::vector<Form>{{1, 0, 1}});
    for (const Form& f : reduced_forms(229))
        CHECK(is_reduced(f, 229));
}

TEST_CASE("composition identities on disc -23")
{
    const int64_t D = -23;
    Form pr = principal_form(D);
    CHECK(pr == Form{1, 1, 6});
    Form f{2, 1, 3}, g{2, -1, 3};
    CHECK(compose(pr, f, D) == f);
    CHECK(compose(f, g, D) == pr);          // inverse classes
    Form f2 = compose(f, f, D);
    CHECK(f2 == g);
    CHECK(compose(f2, f, D) == pr);         // order 3
}

TEST_CASE("composition group laws, exhaustive per discriminant")
{
    for (int64_t D : {-23ll, -47ll, -71ll, -84ll, -120ll, -4ll, -3ll, -8ll, -1992ll, -1999ll}) {
        auto forms = reduced_forms(D);
        Form pr = principal_form(D);
        for (const auto& x : forms) {
            CHECK(compose(pr, x, D) == x);
            CHECK(compose(x, Form{x.a, -x.b, x.c}, D) == pr); // inverse
            for (const auto& y : forms) {
                CHECK(compose(x, y, D) == compose(y, x, D));
                for (const auto& z : forms)
                    CHECK(compose(compose(x, y, D), z, D) == compose(x, compose(y, z, D), D));
            }
        }
    }
}

TEST_CASE("indefinite composition group laws at the class level")
{
    for (int64_t D : {229ll, 21ll, 12ll, 136ll, 145ll, 316ll, 1996ll}) {
        if (!is_fundamental(D))
            continue;
        auto tab = detail::build_indefinite_table(D, detail::indefinite_half_forms(D));
        uint32_t h = tab.ncycles;
        uint32_t e = tab.principal;
        for (uint32_t x = 0; x < h; ++x) {
            CHECK(tab.mul(e, x) == x);
            for (uint32_t y = 0; y < h; ++y) {
                CHECK(tab.mul(x, y) == tab.mul(y, x));
                for (uint32_t z = 0; z < h; ++z)
                    CHECK(tab.mul(tab.mul(x, y), z) == tab.mul(x, tab.mul(y, z)));
            }
        }
    }
}

TEST_CASE("class group structures of named discriminants")
{
    auto s = class_group(-23);
    CHECK(s.h == 3);
    CHECK(s.divisors == std::vector<uint32_t>{3});

    s = class_group(-4);
    CHECK(s.h == 1);
    CHECK(s.divisors.empty());

    s = class_group(229);
    CHECK(s.h == 3);
    CHECK(s.divisors == std::vector<uint32_t>{3});

    s = class_group(21); // narrow class number (unit norm +1)
    CHECK(s.h == 2);
    CHECK(s.divisors == std::vector<uint32_t>{2});

    s = class_group(-47);
    CHECK(s.h == 5);
    CHECK(s.divisors == std::vector<uint32_t>{5});

    // h(-3299) = 27 with group C_3 x C_9
    s = class_group(-3299);
    CHECK(s.h == 27);
    CHECK(s.divisors == std::vector<uint32_t>{3, 9});

    CHECK_THROWS_AS(class_group(-25), std::invalid_argument);
    CHECK_THROWS_AS(class_group(7), std::invalid_argument);
    CHECK_THROWS_AS(class_group(-100000007), std::invalid_argument); // over the bound
}

TEST_CASE("ell_rank")
{
    auto s = class_group(-23);
    CHECK(ell_rank(s, 3) == 1);
    CHECK(ell_rank(s, 5) == 0);
    auto t = class_group(-4);
    CHECK(ell_rank(t, 3) == 0);
    CHECK(ell_rank(t, 7) == 0);
    auto u = class_group(-3299);
    CHECK(ell_rank(u, 3) == 2);
}

TEST_CASE("analytic class number examples")
{
    CHECK(class_number_analytic(-23) == 3);
    CHECK(class_number_analytic(-4) == 1);
    CHECK(class_number_analytic(-3) == 1);
    CHECK(class_number_analytic(5) == 1);
    CHECK(class_number_analytic(-163) == 1);
    CHECK(class_number_analytic(229) == 3);
    CHECK_THROWS_AS(class_number_analytic(-9), std::invalid_argument);
}

TEST_CASE("torsion oracle examples")
{
    CHECK(ell_rank_torsion_oracle(-23, 3) == 1);
    CHECK(ell_rank_torsion_oracle(-23, 5) == 0);
    CHECK(ell_rank_torsion_oracle(-4, 3) == 0);
    CHECK(ell_rank_torsion_oracle(-3299, 3) == 2);
}

TEST_CASE("oracle agreement for all fundamental -2000 <= D < 0")
{
    for (int64_t D : fundamental_discriminants(2000, Sign::negative)) {
        auto s = class_group(D);
        CHECK(s.h == class_number_analytic(D));
        for (uint32_t ell : {3u, 5u, 7u})
            CHECK(ell_rank(s, ell) == ell_rank_torsion_oracle(D, ell));
        // ell^r divides h
        for (uint32_t ell : {3u, 5u, 7u}) {
            uint64_t pw = 1;
            for (int i = 0; i < ell_rank(s, ell); ++i)
                pw *= ell;
            CHECK(s.h % pw == 0);
        }
    }
}

TEST_CASE("narrow class number is the wide one or its double")
{
    for (int64_t D : fundamental_discriminants(500, Sign::positive)) {
        auto s = class_group(D);
        auto unit = detail::real_quadratic_unit(D);
        uint64_t wide = class_number_analytic(D);
        uint64_t expect = unit.unit_norm == 1 ? 2 * wide : wide;
        CHECK(s.h == expect);
    }
}

TEST_CASE("records carry consistent ranks")
{
    auto rec = make_record(class_group(-3299));
    CHECK(rec.h == 27);
    CHECK(rec.ranks[0] == 2); // ell = 3
    CHECK(rec.ranks[1] == 0);
    CHECK(rec.divisors == std::vector<uint32_t>{3, 9});
}

TEST_CASE("sweep records equal per-discriminant computations, both signs")
{
    for (Sign sign : {Sign::negative, Sign::positive}) {
        auto recs = sweep_records(sign, 1, 3000);
        std::size_t k = 0;
        for (int64_t D : fundamental_discriminants(3000, sign)) {
            REQUIRE(k < recs.size());
            CHECK(recs[k] == make_record(class_group(D)));
            CHECK(recs[k].D == D);
            ++k;
        }
        CHECK(k == recs.size());
    }
}
