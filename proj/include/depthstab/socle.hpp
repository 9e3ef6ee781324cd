#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "monomial.hpp"

namespace depthstab {

// A monomial w outside I with x_i * w in I for every variable of the ambient
// ring, if one exists. Such a w exists iff depth S/I = 0. The search runs over
// the box 0 <= w_j <= rho_j, rho_j the largest exponent of x_j in a generator.
inline std::optional<Monomial> socle_witness(const MonomialIdeal &I, const Caps &caps = {}) {
    if (I.size() == 0 || I.is_unit())
        throw ArgumentError("socle search needs a proper nonzero monomial ideal");
    const auto rho = I.max_exponents();
    const std::size_t n = I.n();
    // A variable missing from every generator can never push w into I.
    if (std::any_of(rho.begin(), rho.end(), [](Exponent e) { return e == 0; }))
        return std::nullopt;
    std::size_t box = 1;
    for (auto r : rho) {
        if (box > caps.socle_box / (r + 1))
            throw ResourceError("socle_box", caps.socle_box);
        box *= r + 1;
    }
    const PackedIdeal packed(I);
    std::vector<Exponent> w(n, 0);
    std::vector<std::uint64_t> word = packed.pack(w);
    while (true) {
        if (!packed.contains(word.data())) {
            bool socle = true;
            for (std::size_t i = 0; i < n && socle; ++i) {
                const std::uint64_t unit = std::uint64_t{1} << (8 * (i % 8));
                if (w[i] >= PackedIdeal::max_exponent) {
                    socle = false; // x_i w would exceed every generator exponent
                    break;
                }
                word[i / 8] += unit;
                socle = packed.contains(word.data());
                word[i / 8] -= unit;
            }
            if (socle)
                return Monomial(w);
        }
        std::size_t k = 0;
        for (; k < n; ++k) {
            const std::uint64_t unit = std::uint64_t{1} << (8 * (k % 8));
            if (++w[k] <= rho[k]) {
                word[k / 8] += unit;
                break;
            }
            word[k / 8] -= unit * (w[k] - 1);
            w[k] = 0;
        }
        if (k == n)
            break;
    }
    return std::nullopt;
}

inline bool socle_depth_zero_oracle(const MonomialIdeal &I, const Caps &caps = {}) {
    return socle_witness(I, caps).has_value();
}

// Image of I after setting x_j = 1 for every j outside `keep` (a mask over
// variables, bit j-1 for x_j), as an ideal in the kept variables (in order).
// Returns nullopt when the image is the unit ideal.
inline std::optional<MonomialIdeal> localize(const MonomialIdeal &I, std::uint64_t keep) {
    std::vector<std::size_t> vars;
    for (std::size_t j = 0; j < I.n(); ++j)
        if (keep >> j & 1)
            vars.push_back(j);
    std::vector<Monomial> gens;
    for (const auto &g : I.generators()) {
        Monomial p(vars.size());
        for (std::size_t k = 0; k < vars.size(); ++k)
            p[k] = g[vars[k]];
        if (p.is_unit())
            return std::nullopt;
        gens.push_back(std::move(p));
    }
    return MonomialIdeal(vars.size(), std::move(gens));
}

using VariableSet = std::vector<std::size_t>; // 1-indexed, ascending

inline VariableSet variables_of(std::uint64_t mask) {
    VariableSet out;
    for (std::size_t j = 0; j < 64; ++j)
        if (mask >> j & 1)
            out.push_back(j + 1);
    return out;
}

// Associated monomial primes of S/I, each given by its variable support,
// sorted by size and then lexicographically. P_A is associated iff the
// maximal ideal of K[x_A] is associated to the localization of I at A.
inline std::vector<VariableSet> associated_primes(const MonomialIdeal &I, const Caps &caps = {}) {
    if (I.n() > caps.associated_primes_n)
        throw ResourceError("associated_primes_n", caps.associated_primes_n);
    if (I.size() == 0 || I.is_unit())
        throw ArgumentError("associated primes need a proper nonzero monomial ideal");
    // An associated prime contains I, so A meets the support of every generator.
    std::vector<std::uint64_t> supports;
    for (const auto &g : I.generators())
        supports.push_back(g.support_mask());
    std::vector<VariableSet> out;
    const std::uint64_t subsets = std::uint64_t{1} << I.n();
    for (std::uint64_t A = 1; A < subsets; ++A) {
        bool covers = std::all_of(supports.begin(), supports.end(), [&](std::uint64_t s) { return s & A; });
        if (!covers)
            continue;
        auto local = localize(I, A);
        if (local && socle_depth_zero_oracle(*local, caps))
            out.push_back(variables_of(A));
    }
    std::sort(out.begin(), out.end(), [](const VariableSet &a, const VariableSet &b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

} // namespace depthstab
