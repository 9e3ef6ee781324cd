#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "exact_matrix.hpp"

namespace depthstab {

using Face = std::vector<std::uint32_t>;

struct FaceHash {
    std::size_t operator()(const Face &f) const noexcept {
        std::size_t h = f.size();
        for (auto v : f)
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

// Finite abstract simplicial complex on vertices 0..vertex_count-1, stored as
// the full face list grouped by cardinality. faces(0) is {∅}; a complex always
// contains the empty face.
class SimplicialComplex {
  public:
    SimplicialComplex() : faces_(1, std::vector<Face>{Face{}}) {}

    // Builds from an explicit face list; throws unless it is closed under
    // subsets. The empty face is added if missing.
    static SimplicialComplex from_faces(std::size_t vertex_count, std::vector<Face> faces) {
        SimplicialComplex k;
        k.vertex_count_ = vertex_count;
        for (auto &f : faces) {
            std::sort(f.begin(), f.end());
            if (std::adjacent_find(f.begin(), f.end()) != f.end())
                throw ValidationError("face with a repeated vertex");
            if (!f.empty() && f.back() >= vertex_count)
                throw ValidationError("face vertex out of range");
            k.insert(std::move(f));
        }
        k.finalize();
        k.validate_closed();
        return k;
    }

    // Builds the downward closure of the given facets.
    static SimplicialComplex from_facets(std::size_t vertex_count, const std::vector<Face> &facets,
                                         std::size_t face_cap = SIZE_MAX) {
        std::vector<Face> all;
        for (auto f : facets) {
            std::sort(f.begin(), f.end());
            if (f.size() >= 63)
                throw ResourceError("complex_faces", face_cap);
            const std::uint64_t subsets = std::uint64_t{1} << f.size();
            if (subsets > face_cap)
                throw ResourceError("complex_faces", face_cap);
            for (std::uint64_t s = 0; s < subsets; ++s) {
                Face sub;
                for (std::size_t i = 0; i < f.size(); ++i)
                    if (s >> i & 1)
                        sub.push_back(f[i]);
                all.push_back(std::move(sub));
            }
        }
        return from_faces(vertex_count, std::move(all));
    }

    // Order complex of a finite poset on 0..vertex_count-1: faces are chains.
    // less(a, b) must be a strict partial order.
    static SimplicialComplex order_complex(std::size_t vertex_count,
                                           const std::function<bool(std::uint32_t, std::uint32_t)> &less,
                                           std::size_t face_cap = SIZE_MAX) {
        std::vector<std::vector<std::uint32_t>> above(vertex_count);
        for (std::uint32_t a = 0; a < vertex_count; ++a)
            for (std::uint32_t b = 0; b < vertex_count; ++b)
                if (a != b && less(a, b))
                    above[a].push_back(b);
        SimplicialComplex k;
        k.vertex_count_ = vertex_count;
        std::size_t count = 1;
        Face chain;
        std::function<void(std::uint32_t)> extend = [&](std::uint32_t v) {
            chain.push_back(v);
            Face sorted = chain;
            std::sort(sorted.begin(), sorted.end());
            k.insert(std::move(sorted));
            if (++count > face_cap)
                throw ResourceError("complex_faces", face_cap);
            for (auto w : above[v])
                extend(w);
            chain.pop_back();
        };
        for (std::uint32_t v = 0; v < vertex_count; ++v)
            extend(v);
        k.finalize();
        return k;
    }

    std::size_t vertex_count() const noexcept { return vertex_count_; }

    // Dimension; -1 for the complex {∅}.
    int dimension() const noexcept { return static_cast<int>(faces_.size()) - 2; }

    // Faces with `size` vertices, sorted.
    const std::vector<Face> &faces(std::size_t size) const {
        static const std::vector<Face> none;
        return size < faces_.size() ? faces_[size] : none;
    }

    std::size_t face_count() const {
        std::size_t c = 0;
        for (const auto &layer : faces_)
            c += layer.size();
        return c;
    }

    // Reduced Euler characteristic  sum_{i >= -1} (-1)^i f_i.
    long long reduced_euler_characteristic() const {
        long long chi = 0;
        for (std::size_t s = 0; s < faces_.size(); ++s)
            chi += (s % 2 == 1 ? 1 : -1) * static_cast<long long>(faces_[s].size());
        return chi;
    }

    // Transpose of the boundary map from faces of `size` vertices to faces of
    // size-1 vertices: one row per face, entries (-1)^j at the j-th facet.
    SparseIntMatrix boundary_rows(std::size_t size) const {
        const auto &upper = faces(size);
        const auto &lower = faces(size - 1);
        std::unordered_map<Face, std::size_t, FaceHash> index;
        for (std::size_t i = 0; i < lower.size(); ++i)
            index.emplace(lower[i], i);
        SparseIntMatrix m(upper.size(), lower.size());
        for (std::size_t r = 0; r < upper.size(); ++r) {
            const auto &f = upper[r];
            for (std::size_t j = 0; j < f.size(); ++j) {
                Face sub = f;
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(j));
                m.add(r, index.at(sub), j % 2 == 0 ? 1 : -1);
            }
        }
        return m;
    }

  private:
    void insert(Face f) {
        if (faces_.size() <= f.size())
            faces_.resize(f.size() + 1);
        faces_[f.size()].push_back(std::move(f));
    }

    void finalize() {
        for (auto &layer : faces_) {
            std::sort(layer.begin(), layer.end());
            layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
        }
    }

    void validate_closed() const {
        for (std::size_t s = 1; s < faces_.size(); ++s)
            for (const auto &f : faces_[s])
                for (std::size_t j = 0; j < f.size(); ++j) {
                    Face sub = f;
                    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(j));
                    if (!std::binary_search(faces_[s - 1].begin(), faces_[s - 1].end(), sub))
                        throw ValidationError("face list is not closed under taking subsets");
                }
    }

    std::size_t vertex_count_ = 0;
    std::vector<std::vector<Face>> faces_;
};

// Reduced homology dimensions H̃_i for i = -1..dim K (index 0 is i = -1).
inline std::vector<std::size_t> reduced_homology_dims(const SimplicialComplex &k,
                                                      Field field = Field::rationals()) {
    const std::size_t top = static_cast<std::size_t>(k.dimension() + 2); // number of face sizes
    std::vector<std::size_t> ranks(top + 1, 0); // ranks[s]: rank of boundary out of size-s faces
    for (std::size_t s = 1; s < top; ++s)
        ranks[s] = rank(k.boundary_rows(s), field);
    std::vector<std::size_t> dims(top);
    for (std::size_t s = 0; s < top; ++s)
        dims[s] = k.faces(s).size() - ranks[s] - ranks[s + 1];
    return dims;
}

// Exact check that every composite of consecutive boundary maps vanishes.
inline bool boundary_squared_is_zero(const SimplicialComplex &k) {
    for (std::size_t s = 2; s < static_cast<std::size_t>(k.dimension() + 2); ++s) {
        auto upper = k.boundary_rows(s);
        auto lower = k.boundary_rows(s - 1);
        for (const auto &row : upper.row_entries) {
            std::map<std::uint32_t, long long> acc;
            for (auto [mid, c1] : row)
                for (auto [low, c2] : lower.row_entries[mid])
                    acc[low] += c1 * c2;
            for (auto [col, v] : acc)
                if (v != 0)
                    return false;
        }
    }
    return true;
}

} // namespace depthstab
