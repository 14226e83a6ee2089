#pragma once

#include <cstdint>
#include <vector>

#include "dihedral/permutation.hpp"
#include "dihedral/rational.hpp"

namespace dihedral {

// Transitive permutation group given by explicit generators. The element
// list is the breadth-first closure of the generators, capped at
// kClosureCap; construction rejects intransitive actions.
class TransitiveGroup {
public:
    static constexpr std::size_t kClosureCap = 1'000'000;

    explicit TransitiveGroup(std::vector<Permutation> generators);

    uint32_t degree() const { return degree_; }
    uint64_t order() const { return elements_.size(); }
    const std::vector<Permutation>& elements() const { return elements_; } // sorted
    const std::vector<Permutation>& generators() const { return gens_; }

private:
    uint32_t degree_;
    std::vector<Permutation> gens_;
    std::vector<Permutation> elements_;
};

// Conjugacy classes and their rational (k = Q) coarsening. Classes hold
// indices into group.elements(); q_classes holds indices into classes.
struct QClassPartition {
    std::vector<std::vector<uint32_t>> classes;
    std::vector<std::vector<uint32_t>> q_classes;
    int min_index = 0; // ind(G)
    int b_value = 0;   // # of minimal-index Q-classes
};

// min of ind over non-identity elements; rejects the trivial group.
int group_index(const TransitiveGroup& g);

// a(G) = 1/ind(G), exact.
Rational malle_a(const TransitiveGroup& g);

// Conjugacy classes by exhaustive conjugation; Q-classes as orbits of
// classes under g -> g^m for all m coprime to |G| (the cyclotomic action
// over the rationals in its concrete power-map form).
QClassPartition q_class_partition(const TransitiveGroup& g);

// Number of Q-conjugacy classes of minimal index.
int malle_b_q(const TransitiveGroup& g);

// Dihedral group of order 2*ell in its two standard transitive actions:
// degree ell (cycle + reflection fixing the point 1) or degree 2*ell
// (regular action). ell must be an odd prime.
TransitiveGroup dihedral_group(uint32_t ell, uint32_t degree);

} // namespace dihedral
