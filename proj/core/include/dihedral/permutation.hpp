#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dihedral {

// Permutation of {1..n}, stored 0-based. Immutable after construction.
class Permutation {
public:
    // images[i] = image of point i (0-based); must be a bijection.
    explicit Permutation(std::vector<uint32_t> images);

    static Permutation identity(uint32_t n);
    // "(1,2,3)(4,5)" with 1-based points; degree 0 means "largest point seen".
    static Permutation parse_cycles(std::string_view text, uint32_t degree = 0);

    uint32_t degree() const { return uint32_t(img_.size()); }
    uint32_t apply(uint32_t i) const { return img_[i]; }
    const std::vector<uint32_t>& images() const { return img_; }

    // (f*g)(x) = f(g(x))
    Permutation operator*(const Permutation& g) const;
    Permutation inverse() const;
    Permutation pow(uint64_t e) const;

    bool is_identity() const;
    uint32_t cycle_count() const;
    uint64_t order() const;

    std::string cycle_string() const; // 1-based, "()" for identity

    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<uint32_t> img_;
};

// ind(g) = degree minus number of orbits of g (fixed points count as orbits).
int ind_element(const Permutation& g);

} // namespace dihedral
