#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace depthstab {

// Coefficient field: characteristic 0 means Q, otherwise F_p for a prime p.
struct Field {
    std::uint32_t characteristic = 0;

    static constexpr std::uint32_t default_prime = 32003;

    static Field rationals() { return Field{0}; }
    static Field prime(std::uint32_t p);

    bool is_rational() const noexcept { return characteristic == 0; }
    std::string name() const {
        return is_rational() ? std::string("Q") : "F_" + std::to_string(characteristic);
    }
    friend bool operator==(const Field &, const Field &) = default;
};

inline bool is_prime(std::uint64_t p) {
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

inline Field Field::prime(std::uint32_t p) {
    if (!is_prime(p))
        throw ArgumentError("field characteristic " + std::to_string(p) + " is not prime");
    return Field{p};
}

// Parses "Q", "0" or a prime number.
inline Field parse_field(const std::string &text) {
    if (text == "Q" || text == "q" || text == "0")
        return Field::rationals();
    std::uint64_t p = 0;
    for (char c : text) {
        if (c < '0' || c > '9')
            throw ArgumentError("field must be Q or a prime, got '" + text + "'");
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
        if (p > 0xffffffffULL)
            throw ArgumentError("field characteristic too large: " + text);
    }
    if (text.empty())
        throw ArgumentError("empty field descriptor");
    return Field::prime(static_cast<std::uint32_t>(p));
}

// Sparse integer matrix stored by rows; entries are (column, coefficient).
struct SparseIntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> row_entries;

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), row_entries(r) {}

    void add(std::size_t row, std::size_t col, std::int64_t value) {
        if (value != 0)
            row_entries[row].emplace_back(static_cast<std::uint32_t>(col), value);
    }
};

namespace detail {

template <typename T> using SparseRow = std::vector<std::pair<std::uint32_t, T>>;

struct RationalOps {
    using value_type = mpz_class;

    static bool better_pivot(const mpz_class &a, std::size_t a_len, const mpz_class &b,
                             std::size_t b_len) {
        int c = mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
        return c < 0 || (c == 0 && a_len < b_len);
    }

    // row <- pv * row - rv * pivot, then divide out the row content.
    static void eliminate(SparseRow<mpz_class> &row, const SparseRow<mpz_class> &pivot) {
        const mpz_class pv = pivot.front().second;
        const mpz_class rv = row.front().second;
        SparseRow<mpz_class> out;
        out.reserve(row.size() + pivot.size());
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < pivot.size()) {
            if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
                out.emplace_back(row[i].first, pv * row[i].second);
                ++i;
            } else if (i == row.size() || pivot[j].first < row[i].first) {
                out.emplace_back(pivot[j].first, -rv * pivot[j].second);
                ++j;
            } else {
                mpz_class v = pv * row[i].second - rv * pivot[j].second;
                if (v != 0)
                    out.emplace_back(row[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        mpz_class g = 0;
        for (auto &e : out) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
            if (g == 1)
                break;
        }
        if (g > 1)
            for (auto &e : out)
                mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
        row = std::move(out);
    }
};

struct ModularOps {
    using value_type = std::uint64_t;
    std::uint64_t p;

    std::uint64_t inverse(std::uint64_t a) const {
        std::uint64_t result = 1, base = a % p, e = p - 2;
        while (e) {
            if (e & 1)
                result = result * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return result;
    }

    static bool better_pivot(std::uint64_t, std::size_t a_len, std::uint64_t, std::size_t b_len) {
        return a_len < b_len;
    }

    void eliminate(SparseRow<std::uint64_t> &row, const SparseRow<std::uint64_t> &pivot) const {
        const std::uint64_t factor = row.front().second * inverse(pivot.front().second) % p;
        SparseRow<std::uint64_t> out;
        out.reserve(row.size() + pivot.size());
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < pivot.size()) {
            if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
                out.push_back(row[i++]);
            } else if (i == row.size() || pivot[j].first < row[i].first) {
                out.emplace_back(pivot[j].first, (p - factor * pivot[j].second % p) % p);
                ++j;
            } else {
                std::uint64_t v = (row[i].second + p - factor * pivot[j].second % p) % p;
                if (v != 0)
                    out.emplace_back(row[i].first, v);
                ++i;
                ++j;
            }
        }
        row = std::move(out);
    }
};

// Echelon elimination by leading column. Rows must be sorted by column with
// no zero entries.
template <typename Ops>
std::size_t echelon_rank(std::vector<SparseRow<typename Ops::value_type>> rows, const Ops &ops) {
    std::erase_if(rows, [](const auto &r) { return r.empty(); });
    std::size_t rank = 0;
    while (!rows.empty()) {
        std::uint32_t lead = rows.front().front().first;
        for (const auto &r : rows)
            lead = std::min(lead, r.front().first);
        std::size_t pivot = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].front().first != lead)
                continue;
            if (pivot == rows.size() ||
                Ops::better_pivot(rows[i].front().second, rows[i].size(),
                                  rows[pivot].front().second, rows[pivot].size()))
                pivot = i;
        }
        std::swap(rows[pivot], rows.back());
        auto pivot_row = std::move(rows.back());
        rows.pop_back();
        ++rank;
        for (auto &r : rows)
            if (r.front().first == lead)
                ops.eliminate(r, pivot_row);
        std::erase_if(rows, [](const auto &r) { return r.empty(); });
    }
    return rank;
}

} // namespace detail

inline std::size_t rank(const SparseIntMatrix &m, Field field) {
    if (field.is_rational()) {
        std::vector<detail::SparseRow<mpz_class>> rows;
        rows.reserve(m.rows);
        for (auto entries : m.row_entries) {
            std::sort(entries.begin(), entries.end());
            detail::SparseRow<mpz_class> row;
            for (auto [c, v] : entries) {
                if (!row.empty() && row.back().first == c)
                    row.back().second += static_cast<long>(v);
                else
                    row.emplace_back(c, mpz_class(static_cast<long>(v)));
            }
            std::erase_if(row, [](const auto &e) { return e.second == 0; });
            rows.push_back(std::move(row));
        }
        return detail::echelon_rank(std::move(rows), detail::RationalOps{});
    }
    const std::int64_t p = field.characteristic;
    std::vector<detail::SparseRow<std::uint64_t>> rows;
    rows.reserve(m.rows);
    for (auto entries : m.row_entries) {
        std::sort(entries.begin(), entries.end());
        detail::SparseRow<std::uint64_t> row;
        for (auto [c, v] : entries) {
            auto r = static_cast<std::uint64_t>(((v % p) + p) % p);
            if (!row.empty() && row.back().first == c)
                row.back().second = (row.back().second + r) % static_cast<std::uint64_t>(p);
            else
                row.emplace_back(c, r);
        }
        std::erase_if(row, [](const auto &e) { return e.second == 0; });
        rows.push_back(std::move(row));
    }
    return detail::echelon_rank(std::move(rows), detail::ModularOps{static_cast<std::uint64_t>(p)});
}

// Dense matrix with arbitrary-precision integer entries.
class ExactMatrix {
  public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    mpz_class &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const mpz_class &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    ExactMatrix transposed() const {
        ExactMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    std::size_t rank(Field field = Field::rationals()) const {
        if (field.is_rational()) {
            std::vector<detail::SparseRow<mpz_class>> rows(rows_);
            for (std::size_t r = 0; r < rows_; ++r)
                for (std::size_t c = 0; c < cols_; ++c)
                    if ((*this)(r, c) != 0)
                        rows[r].emplace_back(static_cast<std::uint32_t>(c), (*this)(r, c));
            return detail::echelon_rank(std::move(rows), detail::RationalOps{});
        }
        const mpz_class p = field.characteristic;
        std::vector<detail::SparseRow<std::uint64_t>> rows(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) {
                mpz_class v = (*this)(r, c) % p;
                if (v < 0)
                    v += p;
                if (v != 0)
                    rows[r].emplace_back(static_cast<std::uint32_t>(c), v.get_ui());
            }
        return detail::echelon_rank(std::move(rows), detail::ModularOps{field.characteristic});
    }

    friend bool operator==(const ExactMatrix &, const ExactMatrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpz_class> data_;
};

} // namespace depthstab
