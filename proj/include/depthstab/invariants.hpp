#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exact_matrix.hpp"
#include "graph.hpp"
#include "local_cohomology.hpp"
#include "monomial.hpp"
#include "socle.hpp"

namespace depthstab {

// ---------------------------------------------------------------------------
// Linear relation graph

struct RelationGraphStats {
    Graph gamma; // on 1..n; only non-isolated vertices count
    std::size_t r = 0;
    std::size_t s = 0;
};

// {i, j} is an edge iff x_i u_k = x_j u_l for some generators u_k, u_l.
inline RelationGraphStats linear_relation_graph(const MonomialIdeal &I) {
    if (!I.generating_degree())
        throw PreconditionError("linear relation graph needs an ideal generated in a single degree");
    std::unordered_map<Monomial, std::vector<Vertex>, MonomialHash> buckets;
    for (const auto &u : I.generators())
        for (std::size_t i = 1; i <= I.n(); ++i)
            buckets[u.times_variable(i)].push_back(static_cast<Vertex>(i));
    std::vector<Edge> edges;
    for (auto &[key, vars] : buckets) {
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        for (std::size_t a = 0; a < vars.size(); ++a)
            for (std::size_t b = a + 1; b < vars.size(); ++b)
                edges.emplace_back(vars[a], vars[b]);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    RelationGraphStats out{Graph(I.n(), std::move(edges))};
    std::size_t isolated = 0;
    for (Vertex v = 1; v <= I.n(); ++v) {
        if (out.gamma.degree(v) > 0)
            ++out.r;
        else
            ++isolated;
    }
    out.s = component_count(out.gamma) - isolated;
    return out;
}

// ---------------------------------------------------------------------------
// Analytic spread

inline std::size_t analytic_spread(const Graph &g) {
    if (g.edge_count() == 0)
        throw PreconditionError("analytic spread needs at least one edge");
    return incidence_matrix(g).rank();
}

// Rank of the exponent matrix; equals the fiber cone dimension for ideals
// generated in one degree.
inline std::size_t analytic_spread_ideal(const MonomialIdeal &I) {
    if (!I.generating_degree())
        throw PreconditionError("analytic spread via exponent rank needs a single-degree ideal");
    return exponent_matrix(I).rank();
}

// n - 1 for connected bipartite graphs, n for connected non-bipartite ones.
inline std::size_t analytic_spread_closed_form(const Graph &g) {
    if (!is_connected(g) || g.edge_count() == 0)
        throw PreconditionError("closed form needs a connected graph with an edge");
    return two_coloring(g) ? g.n() - 1 : g.n();
}

// ---------------------------------------------------------------------------
// Bounds in terms of the relation graph

inline std::size_t depth_upper_bound(const MonomialIdeal &I, std::size_t t) {
    auto stats = linear_relation_graph(I);
    if (t < 1 || t + stats.s > stats.r)
        throw ArgumentError("depth bound holds for 1 <= t <= r - s = " +
                            std::to_string(stats.r >= stats.s ? stats.r - stats.s : 0) + ", got t=" +
                            std::to_string(t));
    return I.n() - t - 1;
}

inline std::size_t spread_lower_bound(const MonomialIdeal &I) {
    auto stats = linear_relation_graph(I);
    return stats.r - stats.s + 1;
}

// ---------------------------------------------------------------------------
// Depth sequences

struct DepthOptions {
    Field field = Field::rationals();
    Caps caps;
    // Extra powers past the certified horizon, as an empirical stability check.
    std::size_t extra_powers = 0;
};

struct DepthProfile {
    std::vector<std::size_t> depths; // depths[k-1] = depth S/I^k, k = 1..horizon
    std::vector<std::size_t> tail_depths; // k = horizon+1 .. horizon+extra_powers
    std::size_t horizon = 0;
    std::size_t limit = 0;
    std::size_t dstab = 1;
    std::size_t spread = 0;
    bool certified = false;
    std::size_t expected_limit = 0; // 0 non-bipartite, 1 bipartite
    bool limit_as_expected = false;

    std::size_t depth_at(std::size_t k) const {
        if (k >= 1 && k <= depths.size())
            return depths[k - 1];
        if (k > depths.size() && k - depths.size() <= tail_depths.size())
            return tail_depths[k - depths.size() - 1];
        throw ArgumentError("power " + std::to_string(k) + " outside the computed range");
    }
    std::size_t computed_powers() const { return depths.size() + tail_depths.size(); }
};

inline std::size_t depth_horizon(const Graph &g, std::size_t spread) {
    return g.edge_count() >= 2 ? spread - 1 : 1;
}

// I, I^2, ..., I^count, each reusing the previous power.
inline std::vector<MonomialIdeal> power_sequence(const MonomialIdeal &I, std::size_t count, const Caps &caps = {}) {
    std::vector<MonomialIdeal> out;
    if (count == 0)
        return out;
    out.push_back(I);
    for (std::size_t k = 2; k <= count; ++k)
        out.push_back(product(out.back(), I, caps));
    return out;
}

// Builds the profile from precomputed powers I^1..I^(horizon+extra).
inline DepthProfile depth_profile_from_powers(const Graph &g, const std::vector<MonomialIdeal> &powers,
                                              const DepthOptions &opts) {
    DepthProfile p;
    p.spread = analytic_spread(g);
    p.horizon = depth_horizon(g, p.spread);
    if (powers.size() < p.horizon)
        throw ArgumentError("not enough powers for the certified horizon");
    for (std::size_t k = 1; k <= powers.size(); ++k) {
        auto d = depth_via_local_cohomology(powers[k - 1], opts.field, opts.caps);
        (k <= p.horizon ? p.depths : p.tail_depths).push_back(d);
    }
    p.limit = p.depths.back();
    p.dstab = 1;
    for (std::size_t k = 1; k < p.horizon; ++k)
        if (p.depths[k - 1] != p.limit)
            p.dstab = k + 1;
    p.certified = g.edge_count() >= 2;
    p.expected_limit = two_coloring(g) ? 1 : 0;
    p.limit_as_expected = p.limit == p.expected_limit;
    return p;
}

// depth S/I_G^k for k = 1..l(I_G)-1 (k = 1 for a single edge) and dstab.
inline DepthProfile depth_sequence(const Graph &g, const DepthOptions &opts = {}) {
    if (g.edge_count() == 0)
        throw PreconditionError("depth sequence needs at least one edge");
    if (!is_connected(g))
        throw PreconditionError("depth stability analysis requires a connected graph");
    const auto spread = analytic_spread(g);
    const auto count = depth_horizon(g, spread) + opts.extra_powers;
    return depth_profile_from_powers(g, power_sequence(edge_ideal(g), count, opts.caps), opts);
}

// ---------------------------------------------------------------------------
// Associated primes along powers

struct AssProfile {
    std::vector<std::vector<VariableSet>> ass_per_power; // index k-1
    std::size_t astab = 1;
    bool monotone = true;
    bool bipartite = false;
};

inline bool includes_all(const std::vector<VariableSet> &big, const std::vector<VariableSet> &small) {
    return std::all_of(small.begin(), small.end(),
                       [&](const VariableSet &p) { return std::find(big.begin(), big.end(), p) != big.end(); });
}

// First k from which the sets agree through the end of the list.
inline std::size_t stabilization_index(const std::vector<std::vector<VariableSet>> &chain) {
    std::size_t k = chain.size();
    while (k > 1 && chain[k - 2] == chain.back())
        --k;
    return k;
}

// Bipartite graphs: Ass(I) and Ass(I^2) are computed and compared, astab = 1.
// Otherwise Ass(I^k) is computed for k = 1..max(n - m, 1).
inline AssProfile astab_profile(const Graph &g, const Caps &caps = {},
                                const std::vector<MonomialIdeal> *known_powers = nullptr) {
    if (g.edge_count() == 0)
        throw PreconditionError("astab needs at least one edge");
    if (!is_connected(g))
        throw PreconditionError("astab requires a connected graph");
    AssProfile out;
    out.bipartite = two_coloring(g).has_value();
    const auto metrics = graph_metrics(g);
    const std::size_t count = out.bipartite ? 2 : std::max<std::size_t>(g.n() - metrics.m, 1);
    std::vector<MonomialIdeal> local;
    const std::vector<MonomialIdeal> *powers = known_powers;
    if (!powers || powers->size() < count) {
        local = power_sequence(edge_ideal(g), count, caps);
        powers = &local;
    }
    for (std::size_t k = 1; k <= count; ++k)
        out.ass_per_power.push_back(associated_primes((*powers)[k - 1], caps));
    for (std::size_t k = 1; k < count; ++k)
        out.monotone = out.monotone && includes_all(out.ass_per_power[k], out.ass_per_power[k - 1]);
    out.astab = out.bipartite ? 1 : stabilization_index(out.ass_per_power);
    return out;
}

inline std::size_t astab(const Graph &g, const Caps &caps = {}) { return astab_profile(g, caps).astab; }

// ---------------------------------------------------------------------------
// Tree lower bound

namespace detail {

inline long long ceil_div3(long long x) { return x >= 0 ? (x + 2) / 3 : -((-x) / 3); }

inline void require_tree_with_two_edges(const Graph &g, const char *what) {
    if (!is_tree(g))
        throw PreconditionError(std::string(what) + " needs a tree");
    if (g.edge_count() < 2)
        throw PreconditionError(std::string(what) + " needs a tree with at least two edges");
}

} // namespace detail

// max{ceil((delta - k + q) / 3), 1} with delta the diameter.
inline long long morey_lower_bound(const Graph &g, std::size_t k) {
    detail::require_tree_with_two_edges(g, "tree depth lower bound");
    if (k < 1)
        throw ArgumentError("power must be at least 1");
    const auto m = graph_metrics(g);
    const long long x = static_cast<long long>(*m.diameter) - static_cast<long long>(k) + static_cast<long long>(m.q);
    return std::max(detail::ceil_div3(x), 1LL);
}

// The same quantity with min in place of max.
inline long long morey_lower_bound_min_reading(const Graph &g, std::size_t k) {
    detail::require_tree_with_two_edges(g, "tree depth lower bound");
    const auto m = graph_metrics(g);
    const long long x = static_cast<long long>(*m.diameter) - static_cast<long long>(k) + static_cast<long long>(m.q);
    return std::min(detail::ceil_div3(x), 1LL);
}

// ---------------------------------------------------------------------------
// Socle witness for trees

struct WitnessReport {
    std::vector<Vertex> relabel;      // relabel[v] = new label of original vertex v
    Graph relabeled;                  // free vertex 1 with unique neighbor 2
    std::vector<Edge> inner_edges;    // edges with both endpoints non-free (new labels)
    std::size_t power = 0;            // n - m
    Monomial witness;                 // w = x1 * prod over inner edges of x_i x_j
    Monomial reduced_witness;         // w with x2 replaced by x1
    bool edge_count_ok = false;       // |inner edges| = n - m - 1
    bool witness_outside = false;     // reduced w not in the reduced power
    bool multiples_inside = false;    // x_i * reduced w in the reduced power for all i != 2
    std::vector<std::size_t> failing_variables;

    bool passed() const { return edge_count_ok && witness_outside && multiples_inside; }
};

// Depth zero of S/(I^(n-m), x1 - x2) certified by an explicit monomial.
inline WitnessReport socle_witness_check(const Graph &g, const Caps &caps = {}) {
    detail::require_tree_with_two_edges(g, "socle witness check");
    const std::size_t n = g.n();
    Vertex leaf = 0;
    for (Vertex v = 1; v <= n && !leaf; ++v)
        if (g.degree(v) == 1)
            leaf = v;
    const Vertex parent = g.neighbors(leaf).front();

    WitnessReport out;
    // Transpositions leaf <-> 1, then parent' <-> 2.
    std::vector<Vertex> perm(n + 1);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    auto swap_labels = [&](Vertex a, Vertex b) {
        for (Vertex v = 1; v <= n; ++v) {
            if (perm[v] == a)
                perm[v] = b;
            else if (perm[v] == b)
                perm[v] = a;
        }
    };
    swap_labels(perm[leaf], 1);
    swap_labels(perm[parent], 2);
    out.relabel = perm;
    out.relabeled = g.relabeled(perm);
    const Graph &t = out.relabeled;

    std::size_t m = 0;
    for (Vertex v = 1; v <= n; ++v)
        m += t.degree(v) == 1;
    out.power = n - m;
    out.witness = Monomial(n);
    out.witness[0] = 1;
    for (auto [u, v] : t.edges())
        if (t.degree(u) != 1 && t.degree(v) != 1) {
            out.inner_edges.emplace_back(u, v);
            ++out.witness[u - 1];
            ++out.witness[v - 1];
        }
    out.edge_count_ok = out.inner_edges.size() + 1 == out.power;

    const auto reduced = substitute(power(edge_ideal(t), out.power, caps), 2, 1);
    out.reduced_witness = substitute(out.witness, 2, 1);
    out.witness_outside = !reduced.contains(out.reduced_witness);
    out.multiples_inside = true;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i == 2)
            continue;
        if (!reduced.contains(out.reduced_witness.times_variable(i))) {
            out.multiples_inside = false;
            out.failing_variables.push_back(i);
        }
    }
    return out;
}

} // namespace depthstab
