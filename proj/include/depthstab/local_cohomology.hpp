#pragma once

// Depth of S/I from the multigraded pieces of local cohomology. For a in the
// box 0 <= a_j < rho_j (rho_j the largest exponent of x_j in a generator), the
// degree complex Delta_a consists of the sets F such that no generator u has
// u_j <= a_j for all j outside F. Then
//
//   depth S/I = (#variables not in any generator)
//             + min_a min_{G in Delta_a} ( |G| + 1 + min{ j : H̃_j(lk G) != 0 } ),
//
// i.e. the minimum over a of the Stanley-Reisner depth of Delta_a, computed
// with Hochster's formula on links.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "exact_matrix.hpp"
#include "monomial.hpp"

namespace depthstab {

inline constexpr std::size_t max_degree_complex_vertices = 16;

// Reduced homology of a complex given as a subset-closed list of vertex
// masks; index s of the result is H̃_{s-1}. Only indices up to max_index are
// computed (the rest of the result is left at zero).
inline std::vector<std::size_t> reduced_homology_of_masks(std::vector<std::uint32_t> faces, Field field,
                                                          std::size_t max_index = SIZE_MAX) {
    std::sort(faces.begin(), faces.end(), [](std::uint32_t a, std::uint32_t b) {
        auto pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    std::size_t top = 0;
    for (auto f : faces)
        top = std::max<std::size_t>(top, static_cast<std::size_t>(std::popcount(f)) + 1);
    std::vector<std::vector<std::uint32_t>> layers(top);
    for (auto f : faces)
        layers[static_cast<std::size_t>(std::popcount(f))].push_back(f);
    const std::size_t last = std::min(top, max_index == SIZE_MAX ? top : max_index + 1);
    std::vector<std::size_t> ranks(top + 1, 0);
    for (std::size_t s = 1; s < top && s <= last; ++s) {
        const auto &upper = layers[s];
        const auto &lower = layers[s - 1];
        SparseIntMatrix m(upper.size(), lower.size());
        for (std::size_t r = 0; r < upper.size(); ++r) {
            std::uint32_t f = upper[r];
            int position = 0;
            for (std::uint32_t rest = f; rest; rest &= rest - 1, ++position) {
                std::uint32_t bit = rest & (~rest + 1);
                auto it = std::lower_bound(lower.begin(), lower.end(), f ^ bit);
                m.add(r, static_cast<std::size_t>(it - lower.begin()), position % 2 == 0 ? 1 : -1);
            }
        }
        ranks[s] = rank(m, field);
    }
    std::vector<std::size_t> dims(top, 0);
    for (std::size_t s = 0; s < last; ++s)
        dims[s] = layers[s].size() - ranks[s] - ranks[s + 1];
    return dims;
}

// depth of K[Delta] over `vertices` vertices via Hochster's formula; `is_face`
// is a bitset over all vertex masks. Values >= `below` are not resolved: the
// result is then `below`.
inline std::size_t stanley_reisner_depth(const std::vector<std::uint64_t> &is_face, std::size_t vertices,
                                         Field field, std::size_t below = SIZE_MAX) {
    const std::uint32_t universe = std::uint32_t{1} << vertices;
    auto face = [&](std::uint32_t s) { return (is_face[s >> 6] >> (s & 63)) & 1; };
    std::vector<std::uint32_t> faces;
    for (std::uint32_t s = 0; s < universe; ++s)
        if (face(s))
            faces.push_back(s);
    std::stable_sort(faces.begin(), faces.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    std::size_t best = below;
    std::vector<std::uint32_t> link;
    for (auto g : faces) {
        const auto size = static_cast<std::size_t>(std::popcount(g));
        if (size >= best)
            break;
        link.clear();
        for (auto f : faces)
            if (!(f & g) && face(f | g))
                link.push_back(f);
        // Only H̃_{s-1} with size + s < best can improve the answer.
        auto dims = reduced_homology_of_masks(link, field, best - size - 1);
        for (std::size_t s = 0; s < dims.size() && size + s < best; ++s)
            if (dims[s]) {
                best = size + s;
                break;
            }
    }
    return best;
}

namespace detail {

struct WordsHash {
    std::size_t operator()(const std::vector<std::uint64_t> &w) const noexcept {
        std::size_t h = 0x84222325cbf29ce4ULL;
        for (auto x : w)
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

// Closes a bitset over subsets of nv elements upward under inclusion.
inline void up_closure(std::vector<std::uint64_t> &sets, std::size_t nv) {
    static constexpr std::uint64_t without_bit[6] = {0x5555555555555555ULL, 0x3333333333333333ULL,
                                                     0x0F0F0F0F0F0F0F0FULL, 0x00FF00FF00FF00FFULL,
                                                     0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL};
    for (std::size_t j = 0; j < std::min<std::size_t>(nv, 6); ++j)
        for (auto &w : sets)
            w |= (w & without_bit[j]) << (1u << j);
    for (std::size_t j = 6; j < nv; ++j) {
        const std::size_t step = std::size_t{1} << (j - 6);
        for (std::size_t w = 0; w < sets.size(); ++w)
            if (w & step)
                sets[w] |= sets[w ^ step];
    }
}

} // namespace detail

inline std::size_t depth_via_local_cohomology(const MonomialIdeal &I, Field field = Field::rationals(),
                                              const Caps &caps = {}) {
    if (I.size() == 0 || I.is_unit())
        throw ArgumentError("depth needs a proper nonzero monomial ideal");
    const auto rho_all = I.max_exponents();
    std::vector<std::size_t> used;
    for (std::size_t j = 0; j < I.n(); ++j)
        if (rho_all[j])
            used.push_back(j);
    const std::size_t free_vars = I.n() - used.size();
    const std::size_t nv = used.size();
    if (nv > max_degree_complex_vertices)
        throw ResourceError("degree_complex_vertices", max_degree_complex_vertices);

    std::vector<Monomial> projected;
    for (const auto &g : I.generators()) {
        Monomial p(nv);
        for (std::size_t k = 0; k < nv; ++k)
            p[k] = g[used[k]];
        projected.push_back(std::move(p));
    }
    const MonomialIdeal J(nv, std::move(projected));
    const PackedIdeal packed(J);
    std::vector<Exponent> rho(nv);
    std::size_t box = 1;
    for (std::size_t k = 0; k < nv; ++k) {
        rho[k] = rho_all[used[k]];
        if (box > caps.degree_complex_box / rho[k])
            throw ResourceError("degree_complex_box", caps.degree_complex_box);
        box *= rho[k];
    }

    const std::uint32_t universe = std::uint32_t{1} << nv;
    const std::size_t words = std::max<std::size_t>(1, universe / 64);
    std::vector<std::uint64_t> presence(words);
    std::vector<std::uint64_t> faces(words);
    std::unordered_map<std::vector<std::uint64_t>, std::size_t, detail::WordsHash> cache;

    std::vector<Exponent> a(nv, 0);
    std::vector<std::uint64_t> a_plus_one(packed.words(), 0);
    std::vector<std::uint64_t> ones(packed.words(), 0);
    for (std::size_t k = 0; k < nv; ++k)
        ones[k / 8] |= std::uint64_t{1} << (8 * (k % 8));
    a_plus_one = ones;
    std::vector<std::uint64_t> a_word(packed.words());

    // Odometer over the box, coordinate 0 fastest. Positions below `from` are
    // reset to 0 and position `from` is incremented. Returns false when done.
    auto advance = [&](std::size_t from) {
        for (std::size_t k = 0; k < from; ++k) {
            a_plus_one[k / 8] -= (std::uint64_t{1} << (8 * (k % 8))) * a[k];
            a[k] = 0;
        }
        for (std::size_t k = from; k < nv; ++k) {
            const std::uint64_t unit = std::uint64_t{1} << (8 * (k % 8));
            if (++a[k] < rho[k]) {
                a_plus_one[k / 8] += unit;
                return true;
            }
            a_plus_one[k / 8] -= unit * (a[k] - 1); // byte back to a_k + 1 = 1
            a[k] = 0;
        }
        return false;
    };

    std::size_t best = SIZE_MAX;
    bool more = true;
    while (more) {
        for (std::size_t w = 0; w < a_word.size(); ++w)
            a_word[w] = a_plus_one[w] - ones[w];
        if (packed.contains(a_word.data())) {
            // Every state before position p next moves (p the first nonzero
            // coordinate) dominates a, so it lies in I as well.
            std::size_t p = 0;
            while (p < nv && a[p] == 0)
                ++p;
            more = advance(p + 1);
            continue;
        }
        std::fill(presence.begin(), presence.end(), 0);
        packed.excess_masks(a_plus_one.data(), [&](std::uint64_t mask) {
            presence[mask >> 6] |= std::uint64_t{1} << (mask & 63);
        });
        detail::up_closure(presence, nv); // the non-faces
        for (std::size_t w = 0; w < words; ++w)
            faces[w] = ~presence[w];
        if (universe < 64)
            faces[0] &= (std::uint64_t{1} << universe) - 1;
        // Cached values were computed against an earlier (larger) best, so a
        // stored "not below" answer still cannot improve on the current one.
        auto it = cache.find(faces);
        std::size_t d;
        if (it != cache.end()) {
            d = it->second;
        } else {
            d = stanley_reisner_depth(faces, nv, field, best);
            cache.emplace(faces, d);
        }
        best = std::min(best, d);
        if (best == 0)
            break;
        more = advance(0);
    }
    if (best == SIZE_MAX)
        throw Error("no nonzero local cohomology found; ideal is not proper");
    return free_vars + best;
}

struct DepthValue {
    std::size_t depth = 0;
    Field field;
};

// depth S/I over the given field.
inline DepthValue depth(const MonomialIdeal &I, Field field = Field::rationals(), const Caps &caps = {}) {
    return {depth_via_local_cohomology(I, field, caps), field};
}

} // namespace depthstab
