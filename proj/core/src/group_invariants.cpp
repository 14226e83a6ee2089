#include "dihedral/group_invariants.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dihedral {

TransitiveGroup::TransitiveGroup(std::vector<Permutation> generators)
    : degree_(0), gens_(std::move(generators))
{
    if (gens_.empty())
        throw std::invalid_argument("group needs at least one generator");
    degree_ = gens_.front().degree();
    for (const auto& g : gens_)
        if (g.degree() != degree_)
            throw std::invalid_argument("generators have mixed degrees");

    std::set<Permutation> closed;
    std::vector<Permutation> frontier{Permutation::identity(degree_)};
    closed.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& x : frontier) {
            for (const auto& g : gens_) {
                Permutation y = g * x;
                if (closed.insert(y).second) {
                    if (closed.size() > kClosureCap)
                        throw std::invalid_argument("group closure exceeds element cap");
                    next.push_back(std::move(y));
                }
            }
        }
        frontier = std::move(next);
    }
    elements_.assign(closed.begin(), closed.end());

    // transitivity: orbit of point 0 under the generators
    std::vector<bool> orbit(degree_, false);
    std::vector<uint32_t> stack{0};
    orbit[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        uint32_t p = stack.back();
        stack.pop_back();
        for (const auto& g : gens_) {
            uint32_t q = g.apply(p);
            if (!orbit[q]) {
                orbit[q] = true;
                ++reached;
                stack.push_back(q);
            }
        }
    }
    if (reached != degree_)
        throw std::invalid_argument("action is not transitive");
}

int group_index(const TransitiveGroup& g)
{
    if (g.order() <= 1)
        throw std::invalid_argument("ind(G) undefined for the trivial group");
    int best = int(g.degree());
    for (const auto& e : g.elements())
        if (!e.is_identity())
            best = std::min(best, ind_element(e));
    return best;
}

Rational malle_a(const TransitiveGroup& g)
{
    return Rational(1, group_index(g));
}

QClassPartition q_class_partition(const TransitiveGroup& g)
{
    const auto& els = g.elements();
    const uint32_t n = uint32_t(els.size());
    auto index_of = [&](const Permutation& p) {
        auto it = std::lower_bound(els.begin(), els.end(), p);
        return uint32_t(it - els.begin());
    };

    QClassPartition part;
    std::vector<int> class_of(n, -1);
    for (uint32_t i = 0; i < n; ++i) {
        if (class_of[i] >= 0)
            continue;
        int cid = int(part.classes.size());
        std::vector<uint32_t> members;
        // orbit of els[i] under conjugation by the generators
        std::vector<uint32_t> stack{i};
        class_of[i] = cid;
        while (!stack.empty()) {
            uint32_t j = stack.back();
            stack.pop_back();
            members.push_back(j);
            for (const auto& h : g.generators()) {
                uint32_t k = index_of(h * els[j] * h.inverse());
                if (class_of[k] < 0) {
                    class_of[k] = cid;
                    stack.push_back(k);
                }
            }
        }
        std::sort(members.begin(), members.end());
        part.classes.push_back(std::move(members));
    }

    // Q-classes: orbits of classes under g -> g^m, gcd(m, |G|) = 1
    const uint64_t ord = g.order();
    std::vector<int> qid(part.classes.size(), -1);
    for (uint32_t c = 0; c < part.classes.size(); ++c) {
        if (qid[c] >= 0)
            continue;
        int q = int(part.q_classes.size());
        std::vector<uint32_t> orbit;
        std::vector<uint32_t> stack{c};
        qid[c] = q;
        while (!stack.empty()) {
            uint32_t cur = stack.back();
            stack.pop_back();
            orbit.push_back(cur);
            const Permutation& rep = els[part.classes[cur].front()];
            for (uint64_t m = 1; m < ord; ++m) {
                if (std::gcd(m, ord) != 1)
                    continue;
                uint32_t dst = uint32_t(class_of[index_of(rep.pow(m))]);
                if (qid[dst] < 0) {
                    qid[dst] = q;
                    stack.push_back(dst);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        part.q_classes.push_back(std::move(orbit));
    }

    part.min_index = group_index(g);
    part.b_value = 0;
    for (const auto& qc : part.q_classes) {
        const Permutation& rep = els[part.classes[qc.front()].front()];
        if (!rep.is_identity() && ind_element(rep) == part.min_index)
            ++part.b_value;
    }
    return part;
}

int malle_b_q(const TransitiveGroup& g)
{
    return q_class_partition(g).b_value;
}

namespace {

bool is_odd_prime(uint32_t n)
{
    if (n < 3 || n % 2 == 0)
        return false;
    for (uint32_t d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

} // namespace

TransitiveGroup dihedral_group(uint32_t ell, uint32_t degree)
{
    if (!is_odd_prime(ell))
        throw std::invalid_argument("ell must be an odd prime");
    if (degree != ell && degree != 2 * ell)
        throw std::invalid_argument("degree must be ell or 2*ell");

    if (degree == ell) {
        std::vector<uint32_t> rot(ell), refl(ell);
        for (uint32_t i = 0; i < ell; ++i) {
            rot[i] = (i + 1) % ell;
            refl[i] = (ell - i) % ell; // fixes point 0 (= point 1 in 1-based terms)
        }
        return TransitiveGroup({Permutation(std::move(rot)), Permutation(std::move(refl))});
    }

    // Regular action on the 2*ell group elements: index i < ell encodes r^i,
    // index ell + i encodes s*r^i. Left multiplication by r and s.
    const uint32_t n = 2 * ell;
    std::vector<uint32_t> lr(n), ls(n);
    for (uint32_t i = 0; i < ell; ++i) {
        lr[i] = (i + 1) % ell;                   // r * r^i = r^{i+1}
        lr[ell + i] = ell + (i + ell - 1) % ell; // r * s r^i = s r^{i-1}
        ls[i] = ell + i;                         // s * r^i = s r^i
        ls[ell + i] = i;                         // s * s r^i = r^i
    }
    return TransitiveGroup({Permutation(std::move(lr)), Permutation(std::move(ls))});
}

} // namespace dihedral
