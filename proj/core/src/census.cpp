#include "dihedral/census.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dihedral/errors.hpp"

namespace dihedral {

namespace {

int rank_prime_slot(uint32_t ell)
{
    for (std::size_t i = 0; i < kRankPrimes.size(); ++i)
        if (kRankPrimes[i] == ell)
            return int(i);
    throw std::invalid_argument("ranks are only stored for ell in {3,5,7,11,13}");
}

void require_odd_prime(uint32_t ell)
{
    if (ell < 3 || ell % 2 == 0 || !is_prime(ell))
        throw std::invalid_argument("ell must be an odd prime");
}

void require_degree(uint32_t ell, uint32_t degree)
{
    if (degree != ell && degree != 2 * ell)
        throw std::invalid_argument("degree must be ell or 2*ell");
}

// largest t with t^k <= x
uint64_t root_bound(u128 x, unsigned k)
{
    if (x == 0)
        return 0;
    auto guess = uint64_t(powl((long double)x, 1.0L / k));
    auto le = [&](uint64_t t) {
        auto p = checked_pow_u128(t, k);
        return p && *p <= x;
    };
    while (guess > 0 && !le(guess))
        --guess;
    while (le(guess + 1))
        ++guess;
    return guess;
}

} // namespace

bool psi_pair_valid(int64_t a_disc, uint64_t b, uint32_t ell)
{
    require_odd_prime(ell);
    if (b == 0 || !is_fundamental(a_disc))
        return false;
    for (const auto& [p, e] : factorize(b))
        if (e > 1)
            return false;
    uint64_t g = std::gcd(uint64_t(a_disc < 0 ? -a_disc : a_disc), b);
    while (g % ell == 0)
        g /= ell;
    return g == 1;
}

PairDiscriminants pair_discriminants(const PsiPair& p)
{
    if (!psi_pair_valid(p.a_disc, p.b, p.ell))
        throw std::invalid_argument("invalid (a, b) pair");
    mpz_class a(std::to_string(p.a_disc < 0 ? -p.a_disc : p.a_disc));
    mpz_class b(std::to_string(p.b));
    PairDiscriminants out;
    mpz_class bp;
    mpz_pow_ui(out.abs_d_n.get_mpz_t(), a.get_mpz_t(), p.ell);
    mpz_pow_ui(bp.get_mpz_t(), b.get_mpz_t(), 2 * (p.ell - 1));
    out.abs_d_n *= bp;
    mpz_pow_ui(out.abs_d_k.get_mpz_t(), a.get_mpz_t(), (p.ell - 1) / 2);
    mpz_pow_ui(bp.get_mpz_t(), b.get_mpz_t(), p.ell);
    out.abs_d_k *= bp;
    return out;
}

uint64_t fiber_bound(uint32_t ell, uint32_t r, uint32_t omega_b, const GroundFieldParams& k)
{
    require_odd_prime(ell);
    uint32_t shift = k.class_group_two_rank + k.unit_rank + 1;
    if (shift >= 63)
        throw std::invalid_argument("fiber bound prefactor overflows");
    auto pw = checked_pow_u128(ell, r + omega_b);
    if (!pw)
        throw std::invalid_argument("fiber bound overflows");
    u128 val = (uint64_t(1) << shift) * ((*pw - 1) / (ell - 1));
    if (val > UINT64_MAX)
        throw std::invalid_argument("fiber bound overflows");
    return uint64_t(val);
}

RankTable::Side RankTable::build(std::vector<DiscriminantRecord> recs, uint64_t covered_hi)
{
    Side s;
    s.recs = std::move(recs);
    s.covered_hi = covered_hi;
    s.abs.reserve(s.recs.size());
    for (auto& v : s.prefix)
        v.assign(s.recs.size() + 1, 0);
    for (std::size_t i = 0; i < s.recs.size(); ++i) {
        const auto& r = s.recs[i];
        uint64_t a = uint64_t(r.D < 0 ? -r.D : r.D);
        if (!s.abs.empty() && a <= s.abs.back())
            throw std::invalid_argument("records are not sorted by |D|");
        if (a > covered_hi)
            throw std::invalid_argument("record outside the declared coverage");
        s.abs.push_back(a);
        for (std::size_t k = 0; k < kRankPrimes.size(); ++k) {
            uint64_t pw = 1;
            for (int j = 0; j < r.ranks[k]; ++j)
                pw *= kRankPrimes[k];
            s.prefix[k][i + 1] = s.prefix[k][i] + pw;
        }
    }
    return s;
}

RankTable::RankTable(std::vector<DiscriminantRecord> neg, uint64_t neg_covered_hi,
                     std::vector<DiscriminantRecord> pos, uint64_t pos_covered_hi)
    : neg_(build(std::move(neg), neg_covered_hi)), pos_(build(std::move(pos), pos_covered_hi))
{
}

RankTable RankTable::load(const CacheStore& store, uint64_t neg_hi, uint64_t pos_hi)
{
    auto neg = store.query(Sign::negative, 1, neg_hi);
    auto pos = store.query(Sign::positive, 1, pos_hi);
    return RankTable(std::move(neg), neg_hi, std::move(pos), pos_hi);
}

const RankTable::Side& RankTable::side(Sign sign) const
{
    if (sign == Sign::both)
        throw std::invalid_argument("pick one sign");
    return sign == Sign::negative ? neg_ : pos_;
}

uint64_t RankTable::covered_hi(Sign sign) const
{
    return side(sign).covered_hi;
}

uint64_t RankTable::count(Sign sign, uint64_t bound_abs) const
{
    const Side& s = side(sign);
    if (bound_abs > s.covered_hi)
        throw CoverageError("rank table covers |D| <= " + std::to_string(s.covered_hi) +
                                ", need " + std::to_string(bound_abs),
                            s.covered_hi + 1, bound_abs);
    return uint64_t(std::upper_bound(s.abs.begin(), s.abs.end(), bound_abs) - s.abs.begin());
}

uint64_t RankTable::sum_pow(uint32_t ell, Sign sign, uint64_t bound_abs) const
{
    int slot = rank_prime_slot(ell);
    uint64_t n = count(sign, bound_abs);
    return side(sign).prefix[std::size_t(slot)][n];
}

const std::vector<DiscriminantRecord>& RankTable::records(Sign sign) const
{
    return side(sign).recs;
}

ClAverage cohen_lenstra_average(uint32_t ell, Sign sign, uint64_t X, const RankTable& t)
{
    require_odd_prime(ell);
    if (sign == Sign::both)
        throw std::invalid_argument("the averages are per sign");
    ClAverage out;
    out.count = t.count(sign, X);
    uint64_t s = t.sum_pow(ell, sign, X);
    out.excess_sum = s - out.count;
    out.average = out.count ? double(out.excess_sum) / double(out.count) : 0.0;
    return out;
}

double cohen_lenstra_sum_ratio(uint32_t ell, Sign sign, uint64_t X, const RankTable& t)
{
    require_odd_prime(ell);
    if (X == 0)
        throw std::invalid_argument("X must be positive");
    return double(t.sum_pow(ell, sign, X)) / double(X);
}

SignedCount count_unramified_y_parts(uint32_t ell, uint32_t degree, u128 x,
                                     const RankTable& t)
{
    require_odd_prime(ell);
    require_degree(ell, degree);
    unsigned dexp = degree == ell ? (ell - 1) / 2 : ell;
    uint64_t bound = root_bound(x, dexp);
    SignedCount out;
    for (Sign sign : {Sign::negative, Sign::positive}) {
        uint64_t n = t.count(sign, bound);
        uint64_t s = t.sum_pow(ell, sign, bound);
        u128 y = (u128(s) - n) / (ell - 1);
        (sign == Sign::negative ? out.negative : out.positive) = y;
    }
    return out;
}

CensusPoint count_unramified_y(uint32_t ell, uint32_t degree, u128 x, const RankTable& t)
{
    return {x, count_unramified_y_parts(ell, degree, x, t).total(), CountKind::y_count};
}

SignedCount upper_bound_sum_parts(uint32_t ell, uint32_t degree, u128 x, const RankTable& t)
{
    require_odd_prime(ell);
    require_degree(ell, degree);
    unsigned dexp = degree == ell ? (ell - 1) / 2 : ell;
    unsigned bexp = degree == ell ? ell - 1 : 2 * (ell - 1);

    SignedCount out;
    auto min_d = checked_pow_u128(3, dexp);
    if (!min_d || *min_d > x)
        return out;
    uint64_t bmax = root_bound(x / *min_d, bexp);
    auto bs = squarefree_numbers(std::max<uint64_t>(bmax, 1));

    for (uint64_t b : bs) {
        auto bp = checked_pow_u128(b, bexp);
        if (!bp || *bp > x / *min_d)
            break;
        uint64_t dbound = root_bound(x / *bp, dexp);
        // gcd(|D|, b) must be a power of ell: collect the other primes of b
        std::vector<uint64_t> bad;
        for (const auto& [p, e] : factorize(b))
            if (p != ell)
                bad.push_back(p);
        uint64_t wexp = uint64_t(omega(b));
        u128 lw = 1;
        for (uint64_t i = 0; i < wexp; ++i)
            lw *= ell;
        for (Sign sign : {Sign::negative, Sign::positive}) {
            u128& acc = sign == Sign::negative ? out.negative : out.positive;
            if (bad.empty()) {
                acc += lw * t.sum_pow(ell, sign, dbound);
                continue;
            }
            uint64_t n = t.count(sign, dbound);
            const auto& recs = t.records(sign);
            int slot = rank_prime_slot(ell);
            for (uint64_t i = 0; i < n; ++i) {
                uint64_t a = uint64_t(recs[i].D < 0 ? -recs[i].D : recs[i].D);
                bool ok = true;
                for (uint64_t p : bad)
                    if (a % p == 0) {
                        ok = false;
                        break;
                    }
                if (!ok)
                    continue;
                uint64_t pw = 1;
                for (int j = 0; j < recs[i].ranks[std::size_t(slot)]; ++j)
                    pw *= ell;
                acc += lw * pw;
            }
        }
    }
    return out;
}

CensusPoint upper_bound_sum(uint32_t ell, uint32_t degree, u128 x, const RankTable& t)
{
    return {x, upper_bound_sum_parts(ell, degree, x, t).total(), CountKind::upper_sum};
}

SeriesBracket series_constant(uint32_t ell, uint64_t B)
{
    require_odd_prime(ell);
    if (B < 1)
        throw std::invalid_argument("B must be positive");
    const long double s = 2.0L * (ell - 1) / ell;
    const long double eps = 0.1L;

    SeriesBracket out;
    out.epsilon = double(eps);

    auto sq = squarefree_flags(1, B + 1);
    auto w = omega_table(B);
    long double partial = 0;
    for (uint64_t b = 1; b <= B; ++b) {
        if (!sq[b - 1])
            continue;
        long double term = powl((long double)ell, w[b]) * expl(-s * logl((long double)b));
        partial += term;
    }
    out.partial = double(partial);

    // K = prod_p (1 + ell p^(eps-s)); log-remainder past P by partial
    // summation with pi(t) < 1.25506 t/log t.
    const long double sigma = s - eps;
    const uint32_t P = 1'000'000;
    long double logk = 0;
    for (uint32_t p : primes_up_to(P))
        logk += log1pl(ell * expl(-sigma * logl((long double)p)));
    long double rem = ell * sigma * 1.25506L / logl((long double)P) *
                      expl((1 - sigma) * logl((long double)P)) / (sigma - 1);
    long double K = expl(logk + rem);
    out.majorant = double(K);
    out.tail_bound = double(K * expl(-eps * logl((long double)B)));
    return out;
}

BoundReport unconditional_bound_check(uint32_t ell, uint64_t X, const RankTable& t)
{
    require_odd_prime(ell);
    int slot = rank_prime_slot(ell);
    BoundReport rep;
    for (Sign sign : {Sign::negative, Sign::positive}) {
        uint64_t n = t.count(sign, X);
        const auto& recs = t.records(sign);
        for (uint64_t i = 0; i < n; ++i) {
            const auto& r = recs[i];
            uint64_t pw = 1;
            for (int j = 0; j < r.ranks[std::size_t(slot)]; ++j)
                pw *= ell;
            if (pw > r.h)
                throw InvariantViolation("ell^r exceeds the class number at D = " +
                                         std::to_string(r.D));
            double ad = double(r.D < 0 ? -r.D : r.D);
            double ratio = double(r.h) / (std::sqrt(ad) * std::log(ad));
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.argmax_d = r.D;
            }
            ++rep.checked;
        }
    }
    return rep;
}

FitResult exponent_fit(const std::vector<CensusPoint>& points)
{
    std::vector<std::pair<double, double>> xy;
    for (const auto& p : points) {
        if (p.count == 0)
            continue;
        xy.emplace_back(std::log((double)(long double)p.x), std::log((double)(long double)p.count));
    }
    if (xy.size() < 3)
        throw std::invalid_argument("exponent fit needs at least 3 positive counts");
    auto [mn, mx] = std::minmax_element(xy.begin(), xy.end());
    if (mx->first - mn->first < std::log(100.0) - 1e-9)
        throw std::invalid_argument("exponent fit needs x values spanning two decades");

    double n = double(xy.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (auto [lx, ly] : xy) {
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    double vx = sxx - sx * sx / n;
    double vy = syy - sy * sy / n;
    double cov = sxy - sx * sy / n;
    FitResult fit;
    fit.slope = cov / vx;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.r_squared = vy == 0 ? 1.0 : (cov * cov) / (vx * vy);
    fit.x_min = std::exp(mn->first);
    fit.x_max = std::exp(mx->first);
    return fit;
}

} // namespace dihedral
