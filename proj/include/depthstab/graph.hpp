#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exact_matrix.hpp"

namespace depthstab {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Finite simple graph on vertices 1..n. Edges are stored as (u, v) with
// u < v, sorted, so equal graphs compare equal.
class Graph {
  public:
    Graph() = default;

    Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        for (auto &[u, v] : edges_) {
            if (u == v)
                throw ValidationError("loop at vertex " + std::to_string(u));
            if (u < 1 || v < 1 || u > n_ || v > n_)
                throw ValidationError("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                      " has an endpoint outside 1.." + std::to_string(n_));
            if (u > v)
                std::swap(u, v);
        }
        std::sort(edges_.begin(), edges_.end());
        auto dup = std::adjacent_find(edges_.begin(), edges_.end());
        if (dup != edges_.end())
            throw ValidationError("duplicate edge " + std::to_string(dup->first) + "-" +
                                  std::to_string(dup->second));
        adjacency_.assign(n_ + 1, {});
        for (auto [u, v] : edges_) {
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
        for (auto &nbrs : adjacency_)
            std::sort(nbrs.begin(), nbrs.end());
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge> &edges() const noexcept { return edges_; }
    const std::vector<Vertex> &neighbors(Vertex v) const { return adjacency_.at(v); }
    std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

    bool has_edge(Vertex u, Vertex v) const {
        if (u > v)
            std::swap(u, v);
        return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
    }

    // Relabels vertex v as perm[v] (perm is indexed 1..n and must be a permutation).
    Graph relabeled(const std::vector<Vertex> &perm) const {
        std::vector<Edge> e;
        e.reserve(edges_.size());
        for (auto [u, v] : edges_)
            e.emplace_back(perm.at(u), perm.at(v));
        return Graph(n_, std::move(e));
    }

    friend bool operator==(const Graph &a, const Graph &b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

  private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_{std::vector<std::vector<Vertex>>(1)};
};

// ---------------------------------------------------------------------------
// Text formats

// Edge-list text: "u v" per line, '#' comments, optional "n <N>" header.
inline Graph parse_graph(std::string_view text) {
    std::size_t line_no = 0;
    std::optional<std::size_t> header_n;
    std::size_t max_label = 0;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        std::istringstream ls(line.substr(first));
        std::string a, b, extra;
        ls >> a >> b;
        if (ls >> extra)
            throw ParseError(line_no, "expected two fields, got more: '" + line + "'");
        auto to_int = [&](const std::string &s) -> std::size_t {
            if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), ::isdigit))
                throw ParseError(line_no, "expected a positive integer, got '" + s + "'");
            return static_cast<std::size_t>(std::stoul(s));
        };
        if (a == "n") {
            if (header_n)
                throw ParseError(line_no, "repeated 'n' header");
            header_n = to_int(b);
            continue;
        }
        std::size_t u = to_int(a), v = to_int(b);
        if (u == 0 || v == 0)
            throw ParseError(line_no, "vertex labels are 1-indexed");
        if (u == v)
            throw ValidationError("line " + std::to_string(line_no) + ": loop at vertex " +
                                  std::to_string(u));
        Edge e{static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))};
        if (!seen.insert(e).second)
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate edge " +
                                  std::to_string(e.first) + "-" + std::to_string(e.second));
        edges.push_back(e);
        max_label = std::max({max_label, u, v});
    }
    std::size_t n = max_label;
    if (header_n) {
        if (*header_n < max_label)
            throw ValidationError("header n " + std::to_string(*header_n) +
                                  " is smaller than the largest label " + std::to_string(max_label));
        n = *header_n;
    }
    return Graph(n, std::move(edges));
}

inline std::string to_edge_list(const Graph &g) {
    std::string out = "n " + std::to_string(g.n()) + "\n";
    for (auto [u, v] : g.edges())
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

// One-line form "n;u1-v1,u2-v2,...".
inline std::string to_line(const Graph &g) {
    std::string out = std::to_string(g.n()) + ";";
    bool first = true;
    for (auto [u, v] : g.edges()) {
        if (!first)
            out += ',';
        first = false;
        out += std::to_string(u) + "-" + std::to_string(v);
    }
    return out;
}

inline Graph parse_line(std::string_view text) {
    auto semi = text.find(';');
    if (semi == std::string_view::npos)
        throw ParseError(1, "expected 'n;u-v,...'");
    auto parse_num = [](std::string_view s) -> std::size_t {
        if (s.empty() || s.size() > 9 ||
            !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ParseError(1, "bad integer '" + std::string(s) + "'");
        return std::stoul(std::string(s));
    };
    std::size_t n = parse_num(text.substr(0, semi));
    std::vector<Edge> edges;
    auto rest = text.substr(semi + 1);
    while (!rest.empty()) {
        auto comma = rest.find(',');
        auto item = rest.substr(0, comma);
        auto dash = item.find('-');
        if (dash == std::string_view::npos)
            throw ParseError(1, "bad edge '" + std::string(item) + "'");
        edges.emplace_back(static_cast<Vertex>(parse_num(item.substr(0, dash))),
                           static_cast<Vertex>(parse_num(item.substr(dash + 1))));
        if (comma == std::string_view::npos)
            break;
        rest = rest.substr(comma + 1);
    }
    return Graph(n, std::move(edges));
}

// ---------------------------------------------------------------------------
// Traversal helpers

// BFS distances from a set of sources; unreachable vertices get SIZE_MAX.
inline std::vector<std::size_t> bfs_distances(const Graph &g, const std::vector<Vertex> &sources,
                                              std::vector<Vertex> *parent = nullptr) {
    std::vector<std::size_t> dist(g.n() + 1, SIZE_MAX);
    if (parent)
        parent->assign(g.n() + 1, 0);
    std::queue<Vertex> q;
    for (auto s : sources) {
        dist[s] = 0;
        q.push(s);
    }
    while (!q.empty()) {
        auto v = q.front();
        q.pop();
        for (auto w : g.neighbors(v))
            if (dist[w] == SIZE_MAX) {
                dist[w] = dist[v] + 1;
                if (parent)
                    (*parent)[w] = v;
                q.push(w);
            }
    }
    return dist;
}

inline std::size_t component_count(const Graph &g) {
    std::vector<bool> seen(g.n() + 1, false);
    std::size_t count = 0;
    for (Vertex v = 1; v <= g.n(); ++v) {
        if (seen[v])
            continue;
        ++count;
        auto d = bfs_distances(g, {v});
        for (Vertex w = 1; w <= g.n(); ++w)
            if (d[w] != SIZE_MAX)
                seen[w] = true;
    }
    return count;
}

inline bool is_connected(const Graph &g) { return g.n() <= 1 || component_count(g) == 1; }

inline bool is_tree(const Graph &g) {
    return g.n() >= 1 && is_connected(g) && g.edge_count() + 1 == g.n();
}

// A tree with a vertex adjacent to every other vertex (n >= 2).
inline bool is_star(const Graph &g) {
    if (!is_tree(g) || g.n() < 2)
        return false;
    for (Vertex v = 1; v <= g.n(); ++v)
        if (g.degree(v) + 1 == g.n())
            return true;
    return false;
}

// Proper 2-coloring (1 = U, 2 = V) per component, or nullopt for an odd cycle.
inline std::optional<std::vector<int>> two_coloring(const Graph &g) {
    std::vector<int> color(g.n() + 1, 0);
    for (Vertex s = 1; s <= g.n(); ++s) {
        if (color[s])
            continue;
        color[s] = 1;
        std::queue<Vertex> q;
        q.push(s);
        while (!q.empty()) {
            auto v = q.front();
            q.pop();
            for (auto w : g.neighbors(v)) {
                if (!color[w]) {
                    color[w] = 3 - color[v];
                    q.push(w);
                } else if (color[w] == color[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

inline std::vector<Vertex> path_between(const Graph &g, Vertex from, Vertex to) {
    std::vector<Vertex> parent;
    auto dist = bfs_distances(g, {from}, &parent);
    if (dist[to] == SIZE_MAX)
        return {};
    std::vector<Vertex> path{to};
    while (path.back() != from)
        path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

// ---------------------------------------------------------------------------
// Metrics

struct GraphMetrics {
    bool connected = false;
    bool bipartite = false;
    std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>> parts;
    std::size_t component_count = 0;
    std::vector<Vertex> free_vertices;
    std::size_t m = 0;
    bool is_tree = false;
    std::optional<std::size_t> diameter; // trees only
    std::size_t q = 0;
    std::vector<std::vector<Vertex>> max_paths; // trees only
};

// Tree diameter by double BFS sweep.
inline std::size_t tree_diameter_double_sweep(const Graph &g) {
    if (g.n() <= 1)
        return 0;
    auto d1 = bfs_distances(g, {1});
    Vertex far = 1;
    for (Vertex v = 1; v <= g.n(); ++v)
        if (d1[v] > d1[far])
            far = v;
    auto d2 = bfs_distances(g, {far});
    std::size_t best = 0;
    for (Vertex v = 1; v <= g.n(); ++v)
        best = std::max(best, d2[v]);
    return best;
}

// All longest paths of a tree, one per unordered endpoint pair, listed from the
// smaller endpoint label.
inline std::vector<std::vector<Vertex>> tree_longest_paths(const Graph &g) {
    std::vector<std::vector<Vertex>> paths;
    if (g.n() == 1)
        return {{1}};
    std::vector<Vertex> leaves;
    for (Vertex v = 1; v <= g.n(); ++v)
        if (g.degree(v) == 1)
            leaves.push_back(v);
    std::size_t best = 0;
    std::vector<std::pair<Vertex, Vertex>> ends;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        auto d = bfs_distances(g, {leaves[i]});
        for (std::size_t j = i + 1; j < leaves.size(); ++j) {
            auto len = d[leaves[j]];
            if (len > best) {
                best = len;
                ends.clear();
            }
            if (len == best)
                ends.emplace_back(leaves[i], leaves[j]);
        }
    }
    for (auto [a, b] : ends)
        paths.push_back(path_between(g, a, b));
    return paths;
}

inline GraphMetrics graph_metrics(const Graph &g) {
    GraphMetrics out;
    out.component_count = component_count(g);
    out.connected = out.component_count <= 1;
    if (auto coloring = two_coloring(g)) {
        out.bipartite = true;
        std::pair<std::vector<Vertex>, std::vector<Vertex>> parts;
        for (Vertex v = 1; v <= g.n(); ++v)
            ((*coloring)[v] == 1 ? parts.first : parts.second).push_back(v);
        out.parts = std::move(parts);
    }
    for (Vertex v = 1; v <= g.n(); ++v)
        if (g.degree(v) == 1)
            out.free_vertices.push_back(v);
    out.m = out.free_vertices.size();
    out.is_tree = is_tree(g);
    for (Vertex v = 1; v <= g.n(); ++v) {
        if (g.degree(v) == 1)
            continue;
        std::size_t non_free = 0;
        for (auto w : g.neighbors(v))
            if (g.degree(w) != 1)
                ++non_free;
        if (non_free <= 1)
            ++out.q;
    }
    if (out.is_tree) {
        out.diameter = tree_diameter_double_sweep(g);
        out.max_paths = tree_longest_paths(g);
    }
    return out;
}

// Whether every vertex lies within distance 2 of a longest path: evaluated for
// some longest path and for all of them.
struct PathCoverage {
    bool some_path = false;
    bool every_path = false;
};

inline PathCoverage longest_path_coverage(const Graph &g, const GraphMetrics &metrics) {
    if (!metrics.is_tree)
        throw PreconditionError("longest-path coverage is defined for trees only");
    PathCoverage out{false, true};
    for (const auto &path : metrics.max_paths) {
        auto dist = bfs_distances(g, path);
        bool ok = true;
        for (Vertex v = 1; v <= g.n(); ++v)
            ok = ok && dist[v] <= 2;
        out.some_path = out.some_path || ok;
        out.every_path = out.every_path && ok;
    }
    return out;
}

inline ExactMatrix incidence_matrix(const Graph &g) {
    ExactMatrix m(g.n(), g.edge_count());
    for (std::size_t c = 0; c < g.edge_count(); ++c) {
        auto [u, v] = g.edges()[c];
        m(u - 1, c) = 1;
        m(v - 1, c) = 1;
    }
    return m;
}

// ---------------------------------------------------------------------------
// Canonical forms

namespace detail {

inline std::string rooted_tree_code(const Graph &g, Vertex v, Vertex parent) {
    std::vector<std::string> children;
    for (auto w : g.neighbors(v))
        if (w != parent)
            children.push_back(rooted_tree_code(g, w, v));
    std::sort(children.begin(), children.end());
    std::string out = "(";
    for (auto &c : children)
        out += c;
    return out + ")";
}

inline std::vector<Vertex> tree_centers(const Graph &g) {
    std::vector<std::size_t> deg(g.n() + 1);
    std::vector<Vertex> layer;
    for (Vertex v = 1; v <= g.n(); ++v) {
        deg[v] = g.degree(v);
        if (deg[v] <= 1)
            layer.push_back(v);
    }
    std::size_t remaining = g.n();
    while (remaining > 2) {
        remaining -= layer.size();
        std::vector<Vertex> next;
        for (auto v : layer)
            for (auto w : g.neighbors(v))
                if (--deg[w] == 1)
                    next.push_back(w);
        layer = std::move(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

// Minimal upper-triangle adjacency encoding over all vertex orders that list
// vertices by nondecreasing degree.
inline std::string brute_force_code(const Graph &g) {
    const std::size_t n = g.n();
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{1});
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
    std::vector<std::pair<std::size_t, std::size_t>> classes;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && g.degree(order[j]) == g.degree(order[i]))
            ++j;
        classes.emplace_back(i, j);
        i = j;
    }
    std::vector<bool> best;
    std::vector<bool> bits;
    std::function<void(std::size_t)> recurse = [&](std::size_t cls) {
        if (cls == classes.size()) {
            bits.clear();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    bits.push_back(g.has_edge(order[i], order[j]));
            if (best.empty() || bits < best)
                best = bits;
            return;
        }
        auto [lo, hi] = classes[cls];
        std::sort(order.begin() + static_cast<std::ptrdiff_t>(lo),
                  order.begin() + static_cast<std::ptrdiff_t>(hi));
        do {
            recurse(cls + 1);
        } while (std::next_permutation(order.begin() + static_cast<std::ptrdiff_t>(lo),
                                       order.begin() + static_cast<std::ptrdiff_t>(hi)));
    };
    recurse(0);
    std::string out = "G" + std::to_string(n) + ":";
    for (std::size_t i = 0; i < n; ++i)
        out += std::to_string(g.degree(order[i])) + ",";
    out += ":";
    for (bool b : best)
        out += b ? '1' : '0';
    return out;
}

} // namespace detail

// Isomorphism-invariant key: rooted-at-center encoding for trees, minimal
// adjacency encoding otherwise.
inline std::string canonical_form(const Graph &g) {
    if (is_tree(g)) {
        std::string best;
        for (auto c : detail::tree_centers(g)) {
            auto code = detail::rooted_tree_code(g, c, 0);
            if (best.empty() || code < best)
                best = code;
        }
        return "T" + std::to_string(g.n()) + ":" + best;
    }
    return detail::brute_force_code(g);
}

inline bool isomorphic(const Graph &a, const Graph &b) {
    return a.n() == b.n() && a.edge_count() == b.edge_count() &&
           canonical_form(a) == canonical_form(b);
}

// ---------------------------------------------------------------------------
// Prüfer sequences

inline std::vector<Vertex> prufer_encode(const Graph &tree) {
    if (!is_tree(tree))
        throw PreconditionError("Prüfer encoding requires a tree");
    const std::size_t n = tree.n();
    if (n <= 2)
        return {};
    std::vector<std::size_t> deg(n + 1);
    std::vector<bool> removed(n + 1, false);
    std::set<Vertex> leaves;
    for (Vertex v = 1; v <= n; ++v) {
        deg[v] = tree.degree(v);
        if (deg[v] == 1)
            leaves.insert(v);
    }
    std::vector<Vertex> seq;
    for (std::size_t step = 0; step + 2 < n; ++step) {
        Vertex leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        removed[leaf] = true;
        for (auto w : tree.neighbors(leaf)) {
            if (removed[w])
                continue;
            seq.push_back(w);
            if (--deg[w] == 1)
                leaves.insert(w);
        }
    }
    return seq;
}

inline Graph prufer_decode(const std::vector<Vertex> &seq, std::size_t n) {
    if (n == 1)
        return Graph(1, {});
    if (seq.size() + 2 != n)
        throw ArgumentError("Prüfer sequence length must be n-2");
    std::vector<std::size_t> deg(n + 1, 1);
    for (auto v : seq) {
        if (v < 1 || v > n)
            throw ArgumentError("Prüfer entry out of range");
        ++deg[v];
    }
    std::set<Vertex> leaves;
    for (Vertex v = 1; v <= n; ++v)
        if (deg[v] == 1)
            leaves.insert(v);
    std::vector<Edge> edges;
    for (auto v : seq) {
        Vertex leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.emplace_back(leaf, v);
        if (--deg[v] == 1)
            leaves.insert(v);
    }
    auto it = leaves.begin();
    Vertex a = *it++;
    Vertex b = *it;
    edges.emplace_back(a, b);
    return Graph(n, std::move(edges));
}

// ---------------------------------------------------------------------------
// Families

struct EnumerationOptions {
    bool up_to_isomorphism = false;
    std::size_t cap = 0; // 0: use the family default
};

inline constexpr std::size_t default_tree_cap = 10;
inline constexpr std::size_t default_connected_cap = 7;

// Calls visit(tree) for every labeled tree on n vertices (or one
// representative per isomorphism class, the first in Prüfer order).
template <typename Visitor>
void for_each_tree(std::size_t n, Visitor &&visit, EnumerationOptions opts = {}) {
    const std::size_t cap = opts.cap ? opts.cap : default_tree_cap;
    if (n < 1 || n > cap)
        throw ArgumentError("tree enumeration needs 1 <= n <= " + std::to_string(cap) + ", got " +
                            std::to_string(n));
    std::set<std::string> seen;
    auto emit = [&](const Graph &g) {
        if (opts.up_to_isomorphism && !seen.insert(canonical_form(g)).second)
            return;
        visit(g);
    };
    if (n == 1) {
        emit(Graph(1, {}));
        return;
    }
    if (n == 2) {
        emit(Graph(2, {{1, 2}}));
        return;
    }
    std::vector<Vertex> seq(n - 2, 1);
    while (true) {
        emit(prufer_decode(seq, n));
        std::size_t i = seq.size();
        while (i > 0 && seq[i - 1] == n)
            seq[--i] = 1;
        if (i == 0)
            break;
        ++seq[i - 1];
    }
}

inline std::vector<Graph> enumerate_trees(std::size_t n, EnumerationOptions opts = {}) {
    std::vector<Graph> out;
    for_each_tree(n, [&](const Graph &g) { out.push_back(g); }, opts);
    return out;
}

template <typename Visitor>
void for_each_connected_graph(std::size_t n, Visitor &&visit, EnumerationOptions opts = {}) {
    const std::size_t cap = opts.cap ? opts.cap : default_connected_cap;
    if (n < 1 || n > cap)
        throw ArgumentError("connected-graph enumeration needs 1 <= n <= " + std::to_string(cap) +
                            ", got " + std::to_string(n));
    std::vector<Edge> all;
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = u + 1; v <= n; ++v)
            all.emplace_back(u, v);
    std::set<std::string> seen;
    const std::uint64_t subsets = std::uint64_t{1} << all.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        if (n > 1 && static_cast<std::size_t>(std::popcount(mask)) + 1 < n)
            continue;
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < all.size(); ++i)
            if (mask >> i & 1)
                edges.push_back(all[i]);
        Graph g(n, std::move(edges));
        if (!is_connected(g))
            continue;
        if (opts.up_to_isomorphism && !seen.insert(canonical_form(g)).second)
            continue;
        visit(g);
    }
}

inline std::vector<Graph> enumerate_connected_graphs(std::size_t n, EnumerationOptions opts = {}) {
    std::vector<Graph> out;
    for_each_connected_graph(n, [&](const Graph &g) { out.push_back(g); }, opts);
    return out;
}

// Path 1..a+1 with b-a extra leaves a+2..b+1 attached at vertex a+1.
inline Graph broom(std::size_t a, std::size_t b) {
    if (a < 1 || a >= b)
        throw ArgumentError("broom needs 1 <= a < b, got a=" + std::to_string(a) +
                            ", b=" + std::to_string(b));
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= a; ++v)
        edges.emplace_back(v, v + 1);
    for (Vertex leaf = static_cast<Vertex>(a + 2); leaf <= b + 1; ++leaf)
        edges.emplace_back(static_cast<Vertex>(a + 1), leaf);
    return Graph(b + 1, std::move(edges));
}

// (a, b) when g is isomorphic to broom(a, b). For a broom, a = n - m and b = n - 1.
inline std::optional<std::pair<std::size_t, std::size_t>> broom_parameters(const Graph &g) {
    if (!is_tree(g) || g.n() < 3)
        return std::nullopt;
    std::size_t m = 0;
    for (Vertex v = 1; v <= g.n(); ++v)
        m += g.degree(v) == 1;
    const std::size_t b = g.n() - 1;
    const std::size_t a = g.n() - m;
    if (a < 1 || a >= b)
        return std::nullopt;
    if (canonical_form(g) != canonical_form(broom(a, b)))
        return std::nullopt;
    return std::pair{a, b};
}

} // namespace depthstab
