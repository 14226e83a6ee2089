#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

namespace dihedral {

// Primitive integral binary quadratic form a x^2 + b x y + c y^2.
struct Form {
    int64_t a = 0;
    int64_t b = 0;
    int64_t c = 0;
    friend auto operator<=>(const Form&, const Form&) = default;
};

int64_t form_disc(const Form& f);
bool form_is_primitive(const Form& f);

// D < 0: -a < b <= a <= c with b >= 0 when a == c (unique class
// representative). D > 0: b > 0, ac < 0 and (|a|+|c|)^2 < D (one
// representative per spot on the cycle of the class).
bool is_reduced(const Form& f, int64_t D);

Form principal_form(int64_t D);

// Reduction to a reduced form of the same class. Throws on imprimitive
// input or discriminant mismatch.
Form reduce(Form f, int64_t D);

// Gauss composition; inputs are reduced first, output is reduced.
Form compose(const Form& f, const Form& g, int64_t D);

Form form_pow(const Form& f, uint64_t e, int64_t D);

// One reduction step along the cycle of a reduced indefinite form.
Form rho_step(const Form& f, int64_t D);

namespace detail {

// Unchecked fast paths used by the sweep kernels.
Form reduce_definite_unchecked(int64_t a, int64_t b, int64_t c, int64_t D);
Form reduce_indefinite_unchecked(int64_t a, int64_t b, int64_t D, int64_t sqrt_d);
Form compose_unchecked(const Form& f, const Form& g, int64_t D, bool definite,
                       int64_t sqrt_d);

} // namespace detail

// Canonical reduced forms of a definite discriminant in deterministic order
// (ascending a, then ascending b, +b before -b). Callback returns false to
// stop. skip_primitivity skips the gcd test (valid for fundamental D).
void enumerate_reduced_definite(int64_t D, bool skip_primitivity,
                                const std::function<bool(const Form&)>& cb);

// All reduced forms of disc D (both signs of a for D > 0), sorted.
std::vector<Form> reduced_forms(int64_t D);

} // namespace dihedral
