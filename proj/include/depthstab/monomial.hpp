#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "exact_matrix.hpp"
#include "graph.hpp"

namespace depthstab {

using Exponent = std::uint32_t;

// Size caps that turn combinatorial blow-ups into ResourceError.
struct Caps {
    std::size_t generators = 20'000;
    std::size_t lattice = 200'000;
    std::size_t socle_box = 4'000'000;
    std::size_t complex_faces = 2'000'000;
    std::size_t degree_complex_box = 50'000'000;
    std::size_t associated_primes_n = 14;
};

// Exponent vector over n variables. Variable i (1-indexed) is stored at i-1.
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(std::size_t n) : exps_(n, 0) {}
    Monomial(std::initializer_list<Exponent> exps) : exps_(exps) {}
    explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

    std::size_t n() const noexcept { return exps_.size(); }
    Exponent operator[](std::size_t i) const { return exps_[i]; }
    Exponent &operator[](std::size_t i) { return exps_[i]; }
    const std::vector<Exponent> &exponents() const noexcept { return exps_; }

    // Exponent of variable x_var, 1-indexed.
    Exponent exponent(std::size_t var) const { return exps_.at(var - 1); }

    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (auto e : exps_)
            d += e;
        return d;
    }

    bool is_unit() const {
        return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
    }

    bool divides(const Monomial &other) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > other.exps_[i])
                return false;
        return true;
    }

    Monomial operator*(const Monomial &other) const {
        Monomial out(*this);
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (out.exps_[i] > std::numeric_limits<Exponent>::max() - other.exps_[i])
                throw Error("exponent overflow in monomial product");
            out.exps_[i] += other.exps_[i];
        }
        return out;
    }

    Monomial lcm(const Monomial &other) const {
        Monomial out(*this);
        for (std::size_t i = 0; i < exps_.size(); ++i)
            out.exps_[i] = std::max(out.exps_[i], other.exps_[i]);
        return out;
    }

    // Multiplies by x_var (1-indexed).
    Monomial times_variable(std::size_t var) const {
        Monomial out(*this);
        if (out.exps_.at(var - 1) == std::numeric_limits<Exponent>::max())
            throw Error("exponent overflow");
        ++out.exps_[var - 1];
        return out;
    }

    // Bitmask of variables with positive exponent (variable i -> bit i-1).
    std::uint64_t support_mask() const {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < exps_.size() && i < 64; ++i)
            if (exps_[i])
                mask |= std::uint64_t{1} << i;
        return mask;
    }

    friend bool operator==(const Monomial &, const Monomial &) = default;

    // Canonical order: degree ascending, then exponent vectors descending
    // lexicographically (x1^2 before x1*x2 before x2^2).
    friend bool canonical_less(const Monomial &a, const Monomial &b) {
        auto da = a.degree(), db = b.degree();
        if (da != db)
            return da < db;
        return a.exps_ > b.exps_;
    }

  private:
    std::vector<Exponent> exps_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial &m) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto e : m.exponents()) {
            h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// "x1^2*x3"; the unit monomial prints as "1".
inline std::string to_string(const Monomial &m) {
    std::string out;
    for (std::size_t i = 0; i < m.n(); ++i) {
        if (!m[i])
            continue;
        if (!out.empty())
            out += '*';
        out += "x" + std::to_string(i + 1);
        if (m[i] > 1)
            out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::uint64_t parse_uint(std::string_view s, std::string_view context) {
    if (s.empty() || s.size() > 9 ||
        !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError(1, "bad integer '" + std::string(s) + "' in '" + std::string(context) + "'");
    return std::stoull(std::string(s));
}

// Factors as (variable, exponent) pairs.
inline std::vector<std::pair<std::size_t, Exponent>> parse_factors(std::string_view text) {
    text = trim(text);
    std::vector<std::pair<std::size_t, Exponent>> out;
    if (text == "1")
        return out;
    while (true) {
        auto star = text.find('*');
        auto factor = trim(text.substr(0, star));
        if (factor.size() < 2 || factor[0] != 'x')
            throw ParseError(1, "bad factor '" + std::string(factor) + "'");
        auto caret = factor.find('^');
        auto var = parse_uint(factor.substr(1, caret == std::string_view::npos ? std::string_view::npos
                                                                               : caret - 1),
                              factor);
        std::uint64_t e = 1;
        if (caret != std::string_view::npos)
            e = parse_uint(factor.substr(caret + 1), factor);
        if (var == 0)
            throw ParseError(1, "variables are 1-indexed: '" + std::string(factor) + "'");
        out.emplace_back(var, static_cast<Exponent>(e));
        if (star == std::string_view::npos)
            break;
        text = text.substr(star + 1);
    }
    return out;
}

} // namespace detail

// Parses "x1^2*x3" over n variables (n = 0: smallest n that fits).
inline Monomial parse_monomial(std::string_view text, std::size_t n = 0) {
    auto factors = detail::parse_factors(text);
    std::size_t need = 0;
    for (auto [v, e] : factors)
        need = std::max(need, v);
    if (n == 0)
        n = need;
    if (need > n)
        throw ValidationError("variable x" + std::to_string(need) + " exceeds ambient n=" +
                              std::to_string(n));
    Monomial m(n);
    for (auto [v, e] : factors)
        m[v - 1] += e;
    return m;
}

// Monomial ideal given by its minimal generating set in canonical order.
class MonomialIdeal {
  public:
    MonomialIdeal() = default;

    // Minimalizes the given generators.
    MonomialIdeal(std::size_t n, std::vector<Monomial> gens);

    std::size_t n() const noexcept { return n_; }
    const std::vector<Monomial> &generators() const noexcept { return gens_; }
    std::size_t size() const noexcept { return gens_.size(); }

    bool contains(const Monomial &m) const {
        return std::any_of(gens_.begin(), gens_.end(), [&](const Monomial &g) { return g.divides(m); });
    }

    bool is_unit() const { return gens_.size() == 1 && gens_.front().is_unit(); }

    // Single-degree ideals only: common generator degree.
    std::optional<std::uint64_t> generating_degree() const {
        if (gens_.empty())
            return std::nullopt;
        auto d = gens_.front().degree();
        for (const auto &g : gens_)
            if (g.degree() != d)
                return std::nullopt;
        return d;
    }

    // Largest exponent of each variable over the generators.
    std::vector<Exponent> max_exponents() const {
        std::vector<Exponent> out(n_, 0);
        for (const auto &g : gens_)
            for (std::size_t i = 0; i < n_; ++i)
                out[i] = std::max(out[i], g[i]);
        return out;
    }

    Monomial lcm_of_generators() const {
        return Monomial(max_exponents());
    }

    friend bool operator==(const MonomialIdeal &, const MonomialIdeal &) = default;

  private:
    friend MonomialIdeal minimalize(std::vector<Monomial> gens, std::size_t n);
    struct Trusted {};
    MonomialIdeal(Trusted, std::size_t n, std::vector<Monomial> gens) : n_(n), gens_(std::move(gens)) {}

    std::size_t n_ = 0;
    std::vector<Monomial> gens_;
};

// Removes duplicates and non-minimal generators; canonical sort.
inline MonomialIdeal minimalize(std::vector<Monomial> gens, std::size_t n) {
    if (gens.empty())
        throw ArgumentError("cannot minimalize an empty generator list");
    for (const auto &g : gens)
        if (g.n() != n)
            throw ArgumentError("generator " + to_string(g) + " has " + std::to_string(g.n()) +
                                " variables, expected " + std::to_string(n));
    std::sort(gens.begin(), gens.end(), [](const Monomial &a, const Monomial &b) { return canonical_less(a, b); });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    const bool single_degree = gens.front().degree() == gens.back().degree();
    if (!single_degree) {
        std::vector<Monomial> kept;
        for (auto &g : gens) {
            bool redundant = false;
            for (const auto &k : kept) {
                if (k.degree() >= g.degree())
                    break;
                if (k.divides(g)) {
                    redundant = true;
                    break;
                }
            }
            if (!redundant)
                kept.push_back(std::move(g));
        }
        gens = std::move(kept);
    }
    return MonomialIdeal(MonomialIdeal::Trusted{}, n, std::move(gens));
}

inline MonomialIdeal::MonomialIdeal(std::size_t n, std::vector<Monomial> gens)
    : MonomialIdeal(minimalize(std::move(gens), n)) {}

inline std::string to_string(const MonomialIdeal &I) {
    std::string out = "(";
    for (std::size_t i = 0; i < I.size(); ++i) {
        if (i)
            out += ", ";
        out += to_string(I.generators()[i]);
    }
    return out + ")";
}

// Parses "(x1*x2, x2*x3)" over n variables (n = 0: smallest n that fits).
inline MonomialIdeal parse_ideal(std::string_view text, std::size_t n = 0) {
    text = detail::trim(text);
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        throw ParseError(1, "ideal must be written as '(g1, g2, ...)'");
    text = text.substr(1, text.size() - 2);
    std::vector<std::vector<std::pair<std::size_t, Exponent>>> parsed;
    std::size_t need = 0;
    while (true) {
        auto comma = text.find(',');
        parsed.push_back(detail::parse_factors(text.substr(0, comma)));
        for (auto [v, e] : parsed.back())
            need = std::max(need, v);
        if (comma == std::string_view::npos)
            break;
        text = text.substr(comma + 1);
    }
    if (n == 0)
        n = need;
    if (need > n)
        throw ValidationError("variable x" + std::to_string(need) + " exceeds ambient n=" +
                              std::to_string(n));
    std::vector<Monomial> gens;
    for (const auto &factors : parsed) {
        Monomial m(n);
        for (auto [v, e] : factors)
            m[v - 1] += e;
        gens.push_back(std::move(m));
    }
    return MonomialIdeal(n, std::move(gens));
}

inline MonomialIdeal edge_ideal(const Graph &g) {
    if (g.edge_count() == 0)
        throw ArgumentError("edge ideal of a graph without edges is the zero ideal");
    std::vector<Monomial> gens;
    for (auto [u, v] : g.edges()) {
        Monomial m(g.n());
        m[u - 1] = 1;
        m[v - 1] = 1;
        gens.push_back(std::move(m));
    }
    return MonomialIdeal(g.n(), std::move(gens));
}

// Minimal generators of I * J.
inline MonomialIdeal product(const MonomialIdeal &I, const MonomialIdeal &J, const Caps &caps = {}) {
    if (I.n() != J.n())
        throw ArgumentError("ideals live in different rings");
    std::unordered_set<Monomial, MonomialHash> seen;
    for (const auto &a : I.generators())
        for (const auto &b : J.generators()) {
            seen.insert(a * b);
            if (seen.size() > caps.generators * 4)
                throw ResourceError("generators", caps.generators);
        }
    auto out = minimalize(std::vector<Monomial>(seen.begin(), seen.end()), I.n());
    if (out.size() > caps.generators)
        throw ResourceError("generators", caps.generators);
    return out;
}

// Minimal generators of I^k, minimalizing after every multiplication.
inline MonomialIdeal power(const MonomialIdeal &I, std::size_t k, const Caps &caps = {}) {
    if (k < 1)
        throw ArgumentError("power exponent must be at least 1");
    MonomialIdeal out = I;
    for (std::size_t j = 2; j <= k; ++j)
        out = product(out, I, caps);
    return out;
}

// Identifies x_from with x_to: the from-exponent is added to the to-exponent.
inline MonomialIdeal substitute(const MonomialIdeal &I, std::size_t from, std::size_t to) {
    if (from < 1 || from > I.n() || to < 1 || to > I.n())
        throw ArgumentError("substitution index out of range 1.." + std::to_string(I.n()));
    if (from == to)
        throw ArgumentError("substitution needs distinct variables");
    std::vector<Monomial> gens;
    for (auto g : I.generators()) {
        g[to - 1] += g[from - 1];
        g[from - 1] = 0;
        gens.push_back(std::move(g));
    }
    return MonomialIdeal(I.n(), std::move(gens));
}

inline Monomial substitute(Monomial m, std::size_t from, std::size_t to) {
    if (from < 1 || from > m.n() || to < 1 || to > m.n() || from == to)
        throw ArgumentError("bad substitution indices");
    m[to - 1] += m[from - 1];
    m[from - 1] = 0;
    return m;
}

// Rows = generators, columns = variables.
inline ExactMatrix exponent_matrix(const MonomialIdeal &I) {
    ExactMatrix m(I.size(), I.n());
    for (std::size_t r = 0; r < I.size(); ++r)
        for (std::size_t c = 0; c < I.n(); ++c)
            m(r, c) = static_cast<unsigned long>(I.generators()[r][c]);
    return m;
}

// ---------------------------------------------------------------------------
// Byte-packed generators for hot loops. Exponents are clamped to 127; this is
// exact for divisibility tests as long as every generator exponent is <= 127.

class PackedIdeal {
  public:
    static constexpr Exponent max_exponent = 127;

    explicit PackedIdeal(const MonomialIdeal &I) : n_(I.n()), words_((I.n() + 7) / 8) {
        for (const auto &g : I.generators())
            for (std::size_t i = 0; i < n_; ++i)
                if (g[i] > max_exponent)
                    throw ResourceError("packed exponent", max_exponent);
        packed_.reserve(I.size() * words_);
        for (const auto &g : I.generators()) {
            auto p = pack(g.exponents());
            packed_.insert(packed_.end(), p.begin(), p.end());
        }
        count_ = I.size();
        valid_ = n_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t words() const noexcept { return words_; }
    std::size_t size() const noexcept { return count_; }

    std::vector<std::uint64_t> pack(const std::vector<Exponent> &exps) const {
        std::vector<std::uint64_t> out(words_, 0);
        for (std::size_t i = 0; i < exps.size(); ++i) {
            std::uint64_t e = std::min<Exponent>(exps[i], max_exponent);
            out[i / 8] |= e << (8 * (i % 8));
        }
        return out;
    }

    // Whether some generator divides the packed monomial w.
    bool contains(const std::uint64_t *w) const {
        const std::uint64_t *g = packed_.data();
        for (std::size_t k = 0; k < count_; ++k, g += words_) {
            bool divides = true;
            for (std::size_t j = 0; j < words_ && divides; ++j)
                divides = (((w[j] | high) - g[j]) & high) == high;
            if (divides)
                return true;
        }
        return false;
    }

    bool contains(const std::vector<Exponent> &exps) const { return contains(pack(exps).data()); }

    // Calls visit(mask) for each generator u with mask = support of (u - a)^+,
    // where a_plus_one holds a+1 per byte (each byte at most 128).
    template <typename Visit> void excess_masks(const std::uint64_t *a_plus_one, Visit &&visit) const {
        const std::uint64_t *g = packed_.data();
        for (std::size_t k = 0; k < count_; ++k, g += words_) {
            std::uint64_t mask = 0;
            for (std::size_t j = 0; j < words_; ++j) {
                std::uint64_t ge = ((g[j] | high) - a_plus_one[j]) & high;
                mask |= (((ge >> 7) * 0x0102040810204080ULL) >> 56) << (8 * j);
            }
            visit(mask & valid_);
        }
    }

  private:
    static constexpr std::uint64_t high = 0x8080808080808080ULL;
    std::size_t n_;
    std::size_t words_;
    std::size_t count_ = 0;
    std::uint64_t valid_ = 0;
    std::vector<std::uint64_t> packed_;
};

} // namespace depthstab
