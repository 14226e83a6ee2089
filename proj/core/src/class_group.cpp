#include "dihedral/class_group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "dihedral/errors.hpp"
#include "dihedral/quad_arith.hpp"
#include "dihedral/wide.hpp"

namespace dihedral {

int ell_rank(const ClassGroupStructure& s, uint32_t ell)
{
    if (ell < 3 || !is_prime(ell))
        throw std::invalid_argument("ell must be an odd prime");
    int r = 0;
    for (uint32_t d : s.divisors)
        if (d % ell == 0)
            ++r;
    return r;
}

namespace detail {

Form definite_unkey(uint64_t k, int64_t D)
{
    int64_t a = int64_t(uint32_t(k >> 32));
    int64_t b = int64_t(int32_t(uint32_t(k)));
    return {a, b, int64_t((i128(b) * b - D) / (4 * i128(a)))};
}

uint64_t count_reduced_definite(int64_t D)
{
    uint64_t N = uint64_t(-D);
    if (N % 4 != 0 && N % 4 != 3)
        return 0;
    int64_t b0 = int64_t(N & 1);
    uint64_t h = 0;
    for (int64_t a = 1; 3 * u128(a) * a <= N; ++a) {
        for (int64_t b = b0; b <= a; b += 2) {
            u128 t = u128(b) * b + N;
            if (t % (4 * uint64_t(a)))
                continue;
            int64_t c = int64_t(t / (4 * uint64_t(a)));
            if (c < a)
                continue;
            h += (b == 0 || b == a || a == c) ? 1 : 2;
        }
    }
    return h;
}

namespace {

uint64_t handle_pow(uint64_t x, uint64_t e, uint64_t id,
                    const std::function<uint64_t(uint64_t, uint64_t)>& mul)
{
    uint64_t acc = id;
    while (e > 0) {
        if (e & 1)
            acc = mul(acc, x);
        e >>= 1;
        if (e)
            x = mul(x, x);
    }
    return acc;
}

// T is a subgroup (as a handle set); extends it to <T, g>.
void extend_subgroup(std::unordered_set<uint64_t>& T, uint64_t g,
                     const std::function<uint64_t(uint64_t, uint64_t)>& mul)
{
    std::vector<uint64_t> coset_reps;
    uint64_t x = g;
    while (!T.count(x)) {
        coset_reps.push_back(x);
        x = mul(x, g);
    }
    std::vector<uint64_t> base(T.begin(), T.end());
    for (uint64_t r : coset_reps)
        for (uint64_t t : base)
            T.insert(mul(t, r));
}

// exponents (descending) of the cyclic decomposition of an abelian p-group
// given as a full element set
std::vector<int> sylow_exponents(const std::unordered_set<uint64_t>& T, uint64_t p,
                                 int e, uint64_t id,
                                 const std::function<uint64_t(uint64_t, uint64_t)>& mul)
{
    if (e == 1)
        return {1};
    // t[j] = #elements killed by p^j
    std::vector<uint64_t> t(std::size_t(e) + 1, 0);
    for (uint64_t x : T) {
        int j = 0;
        uint64_t y = x;
        while (y != id) {
            y = handle_pow(y, p, id, mul);
            ++j;
        }
        for (int k = j; k <= e; ++k)
            ++t[k];
    }
    if (t[e] != T.size())
        throw InvariantViolation("Sylow subgroup not annihilated by its exponent");
    std::vector<int> ranks; // c_j = log_p(t_j / t_{j-1}), nonincreasing
    for (int j = 1; j <= e; ++j) {
        uint64_t q = t[j] / t[j - 1];
        if (q * t[j - 1] != t[j])
            throw InvariantViolation("torsion counts are not p-power graded");
        int c = 0;
        while (q > 1) {
            if (q % p)
                throw InvariantViolation("torsion quotient is not a p-power");
            q /= p;
            ++c;
        }
        ranks.push_back(c);
    }
    std::vector<int> exps;
    for (int i = 1; i <= ranks[0]; ++i) {
        int a = 0;
        for (int j = 0; j < int(ranks.size()); ++j)
            if (ranks[j] >= i)
                a = j + 1;
        exps.push_back(a);
    }
    return exps; // descending since ranks is nonincreasing
}

} // namespace

std::vector<uint32_t>
abelian_divisors(uint64_t h, uint64_t identity,
                 const std::function<uint64_t(uint64_t, uint64_t)>& mul,
                 const std::function<void(const std::function<bool(uint64_t)>&)>& for_each_generator)
{
    if (h == 1)
        return {};
    auto factors = factorize(h);
    const std::size_t np = factors.size();
    std::vector<uint64_t> target(np), cofactor(np);
    std::vector<std::unordered_set<uint64_t>> sylow(np);
    for (std::size_t i = 0; i < np; ++i) {
        uint64_t pe = 1;
        for (int j = 0; j < factors[i].second; ++j)
            pe *= factors[i].first;
        target[i] = pe;
        cofactor[i] = h / pe;
        sylow[i].insert(identity);
    }
    std::size_t complete = 0;
    for_each_generator([&](uint64_t g) {
        for (std::size_t i = 0; i < np; ++i) {
            if (sylow[i].size() == target[i])
                continue;
            uint64_t x = handle_pow(g, cofactor[i], identity, mul);
            if (!sylow[i].count(x)) {
                extend_subgroup(sylow[i], x, mul);
                if (sylow[i].size() == target[i])
                    ++complete;
            }
        }
        return complete == np;
    });
    for (std::size_t i = 0; i < np; ++i)
        if (sylow[i].size() != target[i])
            throw InvariantViolation("generators exhausted before the Sylow subgroup closed");

    // merge per-prime exponent profiles into an elementary divisor chain
    std::vector<std::vector<int>> profiles(np);
    std::size_t depth = 0;
    for (std::size_t i = 0; i < np; ++i) {
        profiles[i] = sylow_exponents(sylow[i], factors[i].first, factors[i].second,
                                      identity, mul);
        depth = std::max(depth, profiles[i].size());
    }
    std::vector<uint32_t> divisors(depth, 1);
    for (std::size_t i = 0; i < np; ++i) {
        for (std::size_t j = 0; j < profiles[i].size(); ++j) {
            uint64_t q = 1;
            for (int k = 0; k < profiles[i][j]; ++k)
                q *= factors[i].first;
            divisors[j] = uint32_t(divisors[j] * q);
        }
    }
    std::reverse(divisors.begin(), divisors.end()); // ascending, d_i | d_{i+1}
    return divisors;
}

std::vector<uint32_t> definite_divisors(int64_t D, uint64_t h)
{
    auto mul = [D](uint64_t x, uint64_t y) {
        Form f = definite_unkey(x, D);
        Form g = definite_unkey(y, D);
        return definite_key(compose_unchecked(f, g, D, true, 0));
    };
    auto gens = [D](const std::function<bool(uint64_t)>& visit) {
        enumerate_reduced_definite(D, true, [&](const Form& f) {
            if (f.a == 1)
                return true; // principal, not useful
            return !visit(definite_key(f));
        });
    };
    return abelian_divisors(h, definite_key(principal_form(D)), mul, gens);
}

uint32_t IndefiniteTable::class_of(Form f) const
{
    if (f.a < 0)
        f = rho_step(f, D);
    auto it = std::lower_bound(forms.begin(), forms.end(), f,
                               [](const Form& x, const Form& y) {
                                   return x.a != y.a ? x.a < y.a : x.b < y.b;
                               });
    if (it == forms.end() || it->a != f.a || it->b != f.b)
        throw InvariantViolation("reduced form missing from its cycle table");
    return cyc[std::size_t(it - forms.begin())];
}

uint32_t IndefiniteTable::mul(uint32_t x, uint32_t y) const
{
    const Form& fx = forms[rep[x]];
    const Form& fy = forms[rep[y]];
    return class_of(compose_unchecked(fx, fy, D, false, sqrt_d));
}

IndefiniteTable build_indefinite_table(int64_t D, std::vector<Form> half)
{
    IndefiniteTable tab;
    tab.D = D;
    tab.sqrt_d = int64_t(isqrt_u64(uint64_t(D)));
    tab.forms = std::move(half);
    tab.cyc.assign(tab.forms.size(), UINT32_MAX);

    auto index_of = [&](const Form& f) -> std::size_t {
        auto it = std::lower_bound(tab.forms.begin(), tab.forms.end(), f,
                                   [](const Form& x, const Form& y) {
                                       return x.a != y.a ? x.a < y.a : x.b < y.b;
                                   });
        if (it == tab.forms.end() || it->a != f.a || it->b != f.b)
            throw InvariantViolation("rho step left the enumerated form set");
        return std::size_t(it - tab.forms.begin());
    };

    for (std::size_t i = 0; i < tab.forms.size(); ++i) {
        if (tab.cyc[i] != UINT32_MAX)
            continue;
        uint32_t cid = tab.ncycles++;
        tab.rep.push_back(uint32_t(i));
        std::size_t j = i;
        while (tab.cyc[j] == UINT32_MAX) {
            tab.cyc[j] = cid;
            Form next = rho_step(rho_step(tab.forms[j], D), D);
            j = index_of(next);
        }
    }
    tab.principal = tab.class_of(principal_form(D));
    return tab;
}

std::vector<Form> indefinite_half_forms(int64_t D)
{
    std::vector<Form> out;
    uint64_t X = uint64_t(D);
    for (uint64_t u = 1; (u + 1) * (u + 1) < X; ++u) {
        for (uint64_t v = 1; (u + v) * (u + v) < X; ++v) {
            uint64_t base = 4 * u * v;
            if (base >= X)
                break;
            uint64_t rem = X - base;
            uint64_t b = isqrt_u64(rem);
            uint64_t diff = u > v ? u - v : v - u;
            if (b * b == rem && b > diff)
                out.push_back({int64_t(u), int64_t(b), -int64_t(v)});
        }
    }
    std::sort(out.begin(), out.end(), [](const Form& x, const Form& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    return out;
}

std::vector<uint32_t> indefinite_divisors(const IndefiniteTable& tab)
{
    auto mul = [&tab](uint64_t x, uint64_t y) {
        return uint64_t(tab.mul(uint32_t(x), uint32_t(y)));
    };
    auto gens = [&tab](const std::function<bool(uint64_t)>& visit) {
        for (uint32_t c = 0; c < tab.ncycles; ++c) {
            if (c == tab.principal)
                continue;
            if (visit(c))
                return;
        }
    };
    return abelian_divisors(tab.ncycles, tab.principal, mul, gens);
}

RealUnitInfo real_quadratic_unit(int64_t D)
{
    if (D <= 4)
        throw std::invalid_argument("real unit needs a positive nonsquare discriminant");
    int64_t s = int64_t(isqrt_u64(uint64_t(D)));
    if (s * s == D)
        throw std::invalid_argument("square discriminant");
    const long double sq = sqrtl((long double)D);
    int64_t b0 = ((s ^ D) & 1) ? s - 1 : s;
    int64_t P = b0, Q = 2;
    RealUnitInfo info;
    do {
        long double alpha = (P + sq) / Q;
        info.regulator += logl(alpha);
        int64_t a = int64_t((P + s) / Q); // floor((P+sqrt(D))/Q), P+s >= 0, Q > 0
        int64_t P2 = a * Q - P;
        Q = (D - P2 * P2) / Q;
        P = P2;
        ++info.period;
        if (info.period > uint64_t(4) * uint64_t(s + 2))
            throw InvariantViolation("continued fraction period overflow");
    } while (!(P == b0 && Q == 2));
    info.unit_norm = (info.period % 2) ? -1 : 1;
    return info;
}

} // namespace detail

ClassGroupStructure class_group(int64_t D)
{
    if (!is_fundamental(D))
        throw std::invalid_argument("class_group: discriminant is not fundamental");
    uint64_t N = uint64_t(D < 0 ? -D : D);
    if (N > kMaxClassGroupDisc)
        throw std::invalid_argument("class_group: |D| exceeds the configured bound");

    ClassGroupStructure s;
    s.D = D;
    if (D < 0) {
        s.h = detail::count_reduced_definite(D);
        s.divisors = detail::definite_divisors(D, s.h);
    } else {
        auto tab = detail::build_indefinite_table(D, detail::indefinite_half_forms(D));
        s.h = tab.ncycles;
        s.divisors = detail::indefinite_divisors(tab);
    }
    return s;
}

DiscriminantRecord make_record(const ClassGroupStructure& s)
{
    DiscriminantRecord rec;
    rec.D = s.D;
    rec.h = s.h;
    rec.divisors = s.divisors;
    for (std::size_t i = 0; i < kRankPrimes.size(); ++i) {
        int r = 0;
        for (uint32_t d : rec.divisors)
            if (d % kRankPrimes[i] == 0)
                ++r;
        rec.ranks[i] = uint8_t(r);
    }
    return rec;
}

uint64_t class_number_analytic(int64_t D)
{
    if (!is_fundamental(D))
        throw std::invalid_argument("analytic class number: D not fundamental");
    uint64_t N = uint64_t(D < 0 ? -D : D);
    if (N > kMaxAnalyticDisc)
        throw std::invalid_argument("analytic class number: |D| exceeds the oracle bound");

    if (D < 0) {
        uint64_t w = D == -3 ? 6 : D == -4 ? 4 : 2;
        i128 sum = 0;
        for (uint64_t a = 1; a < N; ++a)
            sum += i128(int64_t(a)) * kronecker(D, a);
        u128 num = w * u128(sum < 0 ? -sum : sum);
        u128 den = 2 * u128(N);
        if (num % den != 0)
            throw InvariantViolation("character sum is not divisible by 2|D|");
        return uint64_t(num / den);
    }

    auto unit = detail::real_quadratic_unit(D);
    long double sum = 0;
    const long double pi = 3.14159265358979323846264338327950288L;
    for (uint64_t a = 1; a < N; ++a) {
        int ch = kronecker(D, a);
        if (ch)
            sum += ch * logl(sinl(pi * (long double)a / (long double)N));
    }
    long double hval = -sum / (2 * unit.regulator);
    long double rounded = roundl(hval);
    if (fabsl(hval - rounded) >= 0.25L)
        throw InvariantViolation("analytic class number failed the rounding guard");
    if (rounded < 1)
        throw InvariantViolation("analytic class number rounded below 1");
    return uint64_t(rounded);
}

int ell_rank_torsion_oracle(int64_t D, uint32_t ell)
{
    if (D >= 0 || uint64_t(-D) > kMaxTorsionOracleDisc)
        throw std::invalid_argument("torsion oracle: need D < 0 with |D| <= 1e5");
    if (ell < 3 || !is_prime(ell))
        throw std::invalid_argument("torsion oracle: ell must be an odd prime");
    if (!is_fundamental(D))
        throw std::invalid_argument("torsion oracle: D not fundamental");

    const Form id = principal_form(D);
    uint64_t killed = 0;
    enumerate_reduced_definite(D, true, [&](const Form& f) {
        Form g = f;
        for (uint32_t i = 1; i < ell; ++i)
            g = detail::compose_unchecked(g, f, D, true, 0);
        if (g == id)
            ++killed;
        return true;
    });
    int r = 0;
    uint64_t k = killed;
    while (k % ell == 0) {
        k /= ell;
        ++r;
    }
    if (k != 1)
        throw InvariantViolation("ell-torsion count is not a power of ell");
    return r;
}

} // namespace dihedral
