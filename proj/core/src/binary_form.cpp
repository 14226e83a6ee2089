#include "dihedral/binary_form.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dihedral/errors.hpp"
#include "dihedral/wide.hpp"

namespace dihedral {

namespace {

// g = v*x + w*y with g >= 0
i128 xgcd(i128 x, i128 y, i128& v, i128& w)
{
    i128 old_r = x, r = y;
    i128 old_s = 1, s = 0;
    i128 old_t = 0, t = 1;
    while (r != 0) {
        i128 q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
        old_t -= q * t;
        std::swap(old_t, t);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    v = old_s;
    w = old_t;
    return old_r;
}

// smallest residue of x mod m (m > 0) that is > lo
i128 mod_above(i128 x, i128 m, i128 lo)
{
    i128 r = (x - (lo + 1)) % m;
    if (r < 0)
        r += m;
    return lo + 1 + r;
}

} // namespace

int64_t form_disc(const Form& f)
{
    i128 d = i128(f.b) * f.b - 4 * i128(f.a) * f.c;
    if (d > INT64_MAX || d < INT64_MIN)
        throw std::invalid_argument("form discriminant exceeds 64 bits");
    return int64_t(d);
}

bool form_is_primitive(const Form& f)
{
    auto g = std::gcd(std::gcd(uint64_t(f.a < 0 ? -f.a : f.a), uint64_t(f.b < 0 ? -f.b : f.b)),
                      uint64_t(f.c < 0 ? -f.c : f.c));
    return g == 1;
}

bool is_reduced(const Form& f, int64_t D)
{
    if (D < 0) {
        if (f.a <= 0 || f.c <= 0)
            return false;
        if (!(-f.a < f.b && f.b <= f.a && f.a <= f.c))
            return false;
        return !(f.a == f.c && f.b < 0);
    }
    if (f.b <= 0)
        return false;
    if (i128(f.a) * f.c >= 0)
        return false;
    i128 t = i128(f.a < 0 ? -f.a : f.a) + (f.c < 0 ? -f.c : f.c);
    return t * t < D;
}

Form principal_form(int64_t D)
{
    if (D < 0) {
        int64_t b0 = (-D) & 1;
        return {1, b0, int64_t((i128(b0) * b0 - D) / 4)};
    }
    int64_t s = int64_t(isqrt_u64(uint64_t(D)));
    int64_t b0 = ((s ^ D) & 1) ? s - 1 : s;
    return {1, b0, int64_t((i128(b0) * b0 - D) / 4)};
}

namespace detail {

Form reduce_definite_unchecked(int64_t a, int64_t b, int64_t c, int64_t D)
{
    for (;;) {
        if (-a < b && b <= a) {
            if (a <= c)
                break;
            int64_t t = a;
            a = c;
            b = -b;
            c = t;
            continue;
        }
        int64_t r = int64_t(mod_above(b, 2 * i128(a), -i128(a)));
        c = int64_t((i128(r) * r - D) / (4 * i128(a)));
        b = r;
    }
    if (a == c && b < 0)
        b = -b;
    return {a, b, c};
}

Form reduce_indefinite_unchecked(int64_t a, int64_t b, int64_t D, int64_t s)
{
    for (int iter = 0; iter < 100000; ++iter) {
        int64_t aa = a < 0 ? -a : a;
        int64_t r;
        if (aa > s)
            r = int64_t(mod_above(b, 2 * i128(aa), -i128(aa)));
        else
            r = int64_t(mod_above(b, 2 * i128(aa), i128(s) - 2 * aa));
        int64_t c = int64_t((i128(r) * r - D) / (4 * i128(a)));
        Form f{a, r, c};
        if (is_reduced(f, D))
            return f;
        a = c;
        b = -r;
    }
    throw InvariantViolation("indefinite reduction did not terminate");
}

Form compose_unchecked(const Form& f1, const Form& f2, int64_t D, bool definite,
                       int64_t sqrt_d)
{
    i128 a1 = f1.a, b1 = f1.b, a2 = f2.a, b2 = f2.b;
    i128 v, w;
    i128 d = xgcd(a1, a2, v, w);
    i128 b3 = v * a1 * (b2 - b1);
    i128 a3 = a1 * a2;
    if (d != 1) {
        i128 s = (b1 + b2) / 2;
        i128 v2, w2;
        i128 d2 = xgcd(d, s, v2, w2);
        b3 = b3 * v2 + w2 * (i128(D) - b1 * b1) / 2;
        b3 /= d2;
        a3 /= d2 * d2;
        d = d2;
    }
    i128 m = 2 * (a3 < 0 ? -a3 : a3);
    b3 = (b3 + b1) % m;
    if (definite) {
        i128 c3 = (b3 * b3 - D) / (4 * a3);
        return reduce_definite_unchecked(int64_t(a3), int64_t(b3), int64_t(c3), D);
    }
    return reduce_indefinite_unchecked(int64_t(a3), int64_t(b3), D, sqrt_d);
}

} // namespace detail

Form reduce(Form f, int64_t D)
{
    if (form_disc(f) != D)
        throw std::invalid_argument("form has the wrong discriminant");
    if (!form_is_primitive(f))
        throw std::invalid_argument("form is not primitive");
    if (D < 0) {
        if (f.a <= 0)
            throw std::invalid_argument("definite form must be positive definite");
        return detail::reduce_definite_unchecked(f.a, f.b, f.c, D);
    }
    int64_t s = int64_t(isqrt_u64(uint64_t(D)));
    if (int64_t(s) * s == D)
        throw std::invalid_argument("square discriminant");
    return detail::reduce_indefinite_unchecked(f.a, f.b, D, s);
}

Form compose(const Form& f, const Form& g, int64_t D)
{
    if (form_disc(f) != D || form_disc(g) != D)
        throw std::invalid_argument("discriminant mismatch in composition");
    Form rf = reduce(f, D);
    Form rg = reduce(g, D);
    int64_t s = D > 0 ? int64_t(isqrt_u64(uint64_t(D))) : 0;
    return detail::compose_unchecked(rf, rg, D, D < 0, s);
}

Form form_pow(const Form& f, uint64_t e, int64_t D)
{
    Form base = reduce(f, D);
    Form acc = principal_form(D);
    int64_t s = D > 0 ? int64_t(isqrt_u64(uint64_t(D))) : 0;
    while (e > 0) {
        if (e & 1)
            acc = detail::compose_unchecked(acc, base, D, D < 0, s);
        e >>= 1;
        if (e)
            base = detail::compose_unchecked(base, base, D, D < 0, s);
    }
    return acc;
}

Form rho_step(const Form& f, int64_t D)
{
    if (D <= 0)
        throw std::invalid_argument("rho step is for indefinite forms");
    int64_t s = int64_t(isqrt_u64(uint64_t(D)));
    int64_t cc = f.c < 0 ? -f.c : f.c;
    int64_t lo = cc > s ? -cc : s - 2 * cc;
    int64_t r = int64_t(mod_above(-i128(f.b), 2 * i128(cc), lo));
    return {f.c, r, int64_t((i128(r) * r - D) / (4 * i128(f.c)))};
}

void enumerate_reduced_definite(int64_t D, bool skip_primitivity,
                                const std::function<bool(const Form&)>& cb)
{
    if (D >= 0)
        throw std::invalid_argument("definite enumeration needs D < 0");
    uint64_t N = uint64_t(-D);
    if (N % 4 != 0 && N % 4 != 3)
        return;
    int64_t b0 = int64_t(N & 1);
    for (int64_t a = 1; 3 * u128(a) * a <= N; ++a) {
        for (int64_t b = b0; b <= a; b += 2) {
            u128 t = u128(b) * b + N;
            if (t % (4 * uint64_t(a)))
                continue;
            int64_t c = int64_t(t / (4 * uint64_t(a)));
            if (c < a)
                continue;
            if (!skip_primitivity && std::gcd(std::gcd(a, b), c) != 1)
                continue;
            if (!cb({a, b, c}))
                return;
            if (b > 0 && b < a && a < c) {
                if (!cb({a, -b, c}))
                    return;
            }
        }
    }
}

std::vector<Form> reduced_forms(int64_t D)
{
    std::vector<Form> out;
    if (D < 0) {
        enumerate_reduced_definite(D, false, [&](const Form& f) {
            out.push_back(f);
            return true;
        });
    } else {
        uint64_t X = uint64_t(D);
        for (uint64_t u = 1; (u + 1) * (u + 1) < X; ++u) {
            for (uint64_t v = 1; (u + v) * (u + v) < X; ++v) {
                uint64_t base = 4 * u * v;
                if (base >= X)
                    break;
                uint64_t rem = X - base;
                uint64_t b = isqrt_u64(rem);
                uint64_t diff = u > v ? u - v : v - u;
                if (b * b == rem && b > diff) {
                    out.push_back({int64_t(u), int64_t(b), -int64_t(v)});
                    out.push_back({-int64_t(u), int64_t(b), int64_t(v)});
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace dihedral
