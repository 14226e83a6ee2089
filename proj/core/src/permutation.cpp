#include "dihedral/permutation.hpp"

#include <numeric>
#include <stdexcept>

namespace dihedral {

Permutation::Permutation(std::vector<uint32_t> images) : img_(std::move(images))
{
    if (img_.empty())
        throw std::invalid_argument("permutation of degree 0");
    std::vector<bool> seen(img_.size(), false);
    for (uint32_t v : img_) {
        if (v >= img_.size() || seen[v])
            throw std::invalid_argument("images are not a bijection on {1..n}");
        seen[v] = true;
    }
}

Permutation Permutation::identity(uint32_t n)
{
    std::vector<uint32_t> img(n);
    std::iota(img.begin(), img.end(), 0u);
    return Permutation(std::move(img));
}

Permutation Permutation::parse_cycles(std::string_view text, uint32_t degree)
{
    std::vector<std::vector<uint32_t>> cycles;
    uint32_t maxpt = 0;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t'))
            ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(')
            throw std::invalid_argument("cycle notation: expected '('");
        ++i;
        std::vector<uint32_t> cyc;
        skip_ws();
        while (i < text.size() && text[i] != ')') {
            uint32_t v = 0;
            bool any = false;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                v = v * 10 + uint32_t(text[i] - '0');
                ++i;
                any = true;
            }
            if (!any || v == 0)
                throw std::invalid_argument("cycle notation: expected positive point");
            cyc.push_back(v - 1);
            maxpt = std::max(maxpt, v);
            skip_ws();
            if (i < text.size() && (text[i] == ',' || text[i] == ' ')) {
                ++i;
                skip_ws();
            }
        }
        if (i == text.size())
            throw std::invalid_argument("cycle notation: unterminated cycle");
        ++i; // ')'
        if (!cyc.empty())
            cycles.push_back(std::move(cyc));
        skip_ws();
    }
    uint32_t n = degree ? degree : maxpt;
    if (n == 0)
        throw std::invalid_argument("cycle notation: empty permutation needs a degree");
    if (maxpt > n)
        throw std::invalid_argument("cycle notation: point exceeds degree");
    std::vector<uint32_t> img(n);
    std::iota(img.begin(), img.end(), 0u);
    std::vector<bool> used(n, false);
    for (const auto& cyc : cycles)
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            if (used[cyc[k]])
                throw std::invalid_argument("cycle notation: repeated point");
            used[cyc[k]] = true;
            img[cyc[k]] = cyc[(k + 1) % cyc.size()];
        }
    return Permutation(std::move(img));
}

Permutation Permutation::operator*(const Permutation& g) const
{
    if (degree() != g.degree())
        throw std::invalid_argument("degree mismatch");
    std::vector<uint32_t> img(degree());
    for (uint32_t i = 0; i < degree(); ++i)
        img[i] = img_[g.img_[i]];
    return Permutation(std::move(img));
}

Permutation Permutation::inverse() const
{
    std::vector<uint32_t> img(degree());
    for (uint32_t i = 0; i < degree(); ++i)
        img[img_[i]] = i;
    return Permutation(std::move(img));
}

Permutation Permutation::pow(uint64_t e) const
{
    Permutation r = identity(degree());
    Permutation b = *this;
    while (e > 0) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

bool Permutation::is_identity() const
{
    for (uint32_t i = 0; i < degree(); ++i)
        if (img_[i] != i)
            return false;
    return true;
}

uint32_t Permutation::cycle_count() const
{
    std::vector<bool> seen(degree(), false);
    uint32_t count = 0;
    for (uint32_t i = 0; i < degree(); ++i) {
        if (seen[i])
            continue;
        ++count;
        for (uint32_t j = i; !seen[j]; j = img_[j])
            seen[j] = true;
    }
    return count;
}

uint64_t Permutation::order() const
{
    std::vector<bool> seen(degree(), false);
    uint64_t ord = 1;
    for (uint32_t i = 0; i < degree(); ++i) {
        if (seen[i])
            continue;
        uint64_t len = 0;
        for (uint32_t j = i; !seen[j]; j = img_[j]) {
            seen[j] = true;
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

std::string Permutation::cycle_string() const
{
    std::vector<bool> seen(degree(), false);
    std::string out;
    for (uint32_t i = 0; i < degree(); ++i) {
        if (seen[i] || img_[i] == i) {
            seen[i] = true;
            continue;
        }
        out += '(';
        bool first = true;
        for (uint32_t j = i; !seen[j]; j = img_[j]) {
            seen[j] = true;
            if (!first)
                out += ',';
            out += std::to_string(j + 1);
            first = false;
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

int ind_element(const Permutation& g)
{
    return int(g.degree()) - int(g.cycle_count());
}

} // namespace dihedral
