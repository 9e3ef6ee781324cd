#pragma once

#include <algorithm>
#include <cstddef>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "monomial.hpp"

namespace depthstab {

// Least common multiples of nonempty subsets of the minimal generators,
// ordered by divisibility. The unit monomial (lcm of the empty set) is the
// implicit bottom and is not stored.
class LcmLattice {
  public:
    explicit LcmLattice(const MonomialIdeal &I, const Caps &caps = {}) : n_(I.n()), atoms_(I.generators()) {
        if (atoms_.empty())
            throw ArgumentError("lcm lattice of an empty generator set");
        std::unordered_map<Monomial, std::size_t, MonomialHash> index;
        std::vector<Monomial> frontier;
        for (const auto &a : atoms_)
            if (index.emplace(a, elements_.size()).second) {
                elements_.push_back(a);
                frontier.push_back(a);
            }
        while (!frontier.empty()) {
            std::vector<Monomial> next;
            for (const auto &e : frontier)
                for (const auto &a : atoms_) {
                    auto l = e.lcm(a);
                    if (index.emplace(l, elements_.size()).second) {
                        elements_.push_back(l);
                        next.push_back(std::move(l));
                        if (elements_.size() > caps.lattice)
                            throw ResourceError("lattice", caps.lattice);
                    }
                }
            frontier = std::move(next);
        }
        std::sort(elements_.begin(), elements_.end(),
                  [](const Monomial &a, const Monomial &b) { return canonical_less(a, b); });
        top_ = I.lcm_of_generators();
    }

    std::size_t n() const noexcept { return n_; }
    const std::vector<Monomial> &elements() const noexcept { return elements_; }
    const std::vector<Monomial> &atoms() const noexcept { return atoms_; }
    const Monomial &top() const noexcept { return top_; }
    std::size_t size() const noexcept { return elements_.size(); }

    bool contains(const Monomial &m) const {
        return std::find(elements_.begin(), elements_.end(), m) != elements_.end();
    }

    // Elements e with e | m and e != m, in canonical order.
    std::vector<Monomial> strictly_below(const Monomial &m) const {
        std::vector<Monomial> out;
        for (const auto &e : elements_)
            if (e != m && e.divides(m))
                out.push_back(e);
        return out;
    }

  private:
    std::size_t n_;
    std::vector<Monomial> atoms_;
    std::vector<Monomial> elements_;
    Monomial top_;
};

} // namespace depthstab
