#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exact_matrix.hpp"
#include "lcm_lattice.hpp"
#include "monomial.hpp"
#include "simplicial.hpp"

namespace depthstab {

// Order complex of the open interval (1, m) of the lcm lattice. Vertex i of
// the complex is the i-th element of `vertices` (canonical order).
struct IntervalComplex {
    std::vector<Monomial> vertices;
    SimplicialComplex complex;
};

inline IntervalComplex open_interval_order_complex(const LcmLattice &lattice, const Monomial &m,
                                                   const Caps &caps = {}) {
    if (!lattice.contains(m))
        throw ArgumentError("monomial " + to_string(m) + " is not in the lcm lattice");
    IntervalComplex out;
    out.vertices = lattice.strictly_below(m);
    const auto &v = out.vertices;
    out.complex = SimplicialComplex::order_complex(
        v.size(), [&](std::uint32_t a, std::uint32_t b) { return v[a] != v[b] && v[a].divides(v[b]); },
        caps.complex_faces);
    return out;
}

// Multigraded Betti numbers of S/I.
class BettiTable {
  public:
    BettiTable(std::size_t n, Field field) : n_(n), field_(field) {}

    void set(std::size_t i, const Monomial &degree, std::size_t value) {
        if (value)
            entries_[{i, degree.exponents()}] = value;
    }

    std::size_t get(std::size_t i, const Monomial &degree) const {
        auto it = entries_.find({i, degree.exponents()});
        return it == entries_.end() ? 0 : it->second;
    }

    std::size_t total(std::size_t i) const {
        std::size_t t = 0;
        for (const auto &[key, v] : entries_)
            if (key.first == i)
                t += v;
        return t;
    }

    std::size_t projective_dimension() const {
        std::size_t pd = 0;
        for (const auto &[key, v] : entries_)
            pd = std::max(pd, key.first);
        return pd;
    }

    std::size_t n() const noexcept { return n_; }
    Field field() const noexcept { return field_; }

    // (i, multidegree, b) in increasing i, then canonical monomial order.
    std::vector<std::tuple<std::size_t, Monomial, std::size_t>> rows() const {
        std::vector<std::tuple<std::size_t, Monomial, std::size_t>> out;
        for (const auto &[key, v] : entries_)
            out.emplace_back(key.first, Monomial(key.second), v);
        std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
            if (std::get<0>(a) != std::get<0>(b))
                return std::get<0>(a) < std::get<0>(b);
            return canonical_less(std::get<1>(a), std::get<1>(b));
        });
        return out;
    }

    friend bool operator==(const BettiTable &a, const BettiTable &b) {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }

  private:
    std::size_t n_;
    Field field_;
    std::map<std::pair<std::size_t, std::vector<Exponent>>, std::size_t> entries_;
};

// CSV rows "i,multidegree,b".
inline void write_betti_csv(std::ostream &os, const BettiTable &table) {
    os << "i,multidegree,b\n";
    for (const auto &[i, m, b] : table.rows())
        os << i << ',' << to_string(m) << ',' << b << '\n';
}

// b_{i,m}(S/I) = dim H̃_{i-2}((1, m)) over the lcm lattice, plus b_{0,1} = 1.
inline BettiTable betti_table(const MonomialIdeal &I, Field field = Field::rationals(),
                              const Caps &caps = {}) {
    if (I.is_unit())
        throw ArgumentError("Betti table of the unit ideal");
    LcmLattice lattice(I, caps);
    BettiTable table(I.n(), field);
    table.set(0, Monomial(I.n()), 1);
    for (const auto &m : lattice.elements()) {
        auto interval = open_interval_order_complex(lattice, m, caps);
        auto dims = reduced_homology_dims(interval.complex, field);
        for (std::size_t s = 0; s < dims.size(); ++s)
            table.set(s + 1, m, dims[s]); // H̃_{s-1} contributes to homological degree s+1
    }
    return table;
}

namespace detail {

// Length (edge count) of the longest chain ending at each element, by
// divisibility; elements must be in canonical (degree-ascending) order.
inline std::vector<std::size_t> chain_heights(const std::vector<Monomial> &elements) {
    std::vector<std::size_t> h(elements.size(), 0);
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (elements[j] != elements[i] && elements[j].divides(elements[i]))
                h[i] = std::max(h[i], h[j] + 1);
    return h;
}

} // namespace detail

// pd(S/I) via the lcm lattice. Elements are visited in decreasing order of the
// largest homological degree their interval can support, stopping once no
// remaining element can beat the current maximum.
inline std::size_t projective_dimension_lattice(const MonomialIdeal &I, Field field = Field::rationals(),
                                                const Caps &caps = {}) {
    if (I.is_unit())
        throw ArgumentError("projective dimension of S/S");
    LcmLattice lattice(I, caps);
    const auto &elements = lattice.elements();
    auto heights = detail::chain_heights(elements);
    // A chain of h+1 elements ending at m leaves h elements in (1, m), so the
    // interval has dimension h-1 and can reach homological degree h+1.
    std::vector<std::size_t> order(elements.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return heights[a] > heights[b]; });
    std::size_t pd = 1;
    for (auto idx : order) {
        if (heights[idx] + 1 <= pd)
            break;
        auto interval = open_interval_order_complex(lattice, elements[idx], caps);
        auto dims = reduced_homology_dims(interval.complex, field);
        for (std::size_t s = dims.size(); s-- > 0;)
            if (dims[s]) {
                pd = std::max(pd, s + 1);
                break;
            }
    }
    return pd;
}

inline std::size_t depth_via_lattice(const MonomialIdeal &I, Field field = Field::rationals(),
                                     const Caps &caps = {}) {
    return I.n() - projective_dimension_lattice(I, field, caps);
}

} // namespace depthstab
