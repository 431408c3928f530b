#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "linform/integer.hpp"

namespace linform {

/// Sorted, duplicate-free finite set of integers.
class FiniteIntSet {
public:
    FiniteIntSet() = default;

    explicit FiniteIntSet(std::vector<Int> elements) : elements_(std::move(elements)) {
        std::sort(elements_.begin(), elements_.end());
        elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    }

    FiniteIntSet(std::initializer_list<long long> elements) {
        elements_.reserve(elements.size());
        for (long long x : elements) elements_.emplace_back(x);
        *this = FiniteIntSet(std::move(elements_));
    }

    template <class It>
    FiniteIntSet(It first, It last) : FiniteIntSet(std::vector<Int>(first, last)) {}

    /// Wraps a vector already known to be strictly increasing.
    static FiniteIntSet from_sorted(std::vector<Int> elements) {
        if (std::adjacent_find(elements.begin(), elements.end(), std::greater_equal<>()) != elements.end())
            throw std::invalid_argument("FiniteIntSet::from_sorted: input is not strictly increasing");
        FiniteIntSet s;
        s.elements_ = std::move(elements);
        return s;
    }

    /// The interval [lo, hi].
    static FiniteIntSet interval(const Int& lo, const Int& hi) {
        std::vector<Int> v;
        for (Int x = lo; x <= hi; ++x) v.push_back(x);
        return from_sorted(std::move(v));
    }

    const std::vector<Int>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    auto begin() const noexcept { return elements_.begin(); }
    auto end() const noexcept { return elements_.end(); }
    const Int& operator[](std::size_t i) const { return elements_[i]; }

    const Int& min() const {
        require_nonempty("min");
        return elements_.front();
    }
    const Int& max() const {
        require_nonempty("max");
        return elements_.back();
    }
    /// max |a| over the set.
    Int max_abs() const {
        require_nonempty("max_abs");
        return std::max(abs(elements_.front()), abs(elements_.back()));
    }

    bool contains(const Int& x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

    void require_nonempty(const char* op) const {
        if (elements_.empty()) throw std::invalid_argument(std::string(op) + ": set must be nonempty");
    }

    friend bool operator==(const FiniteIntSet&, const FiniteIntSet&) = default;
    friend bool operator<(const FiniteIntSet& a, const FiniteIntSet& b) { return a.elements_ < b.elements_; }

    friend std::ostream& operator<<(std::ostream& os, const FiniteIntSet& s) {
        os << '{';
        for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
        return os << '}';
    }

private:
    std::vector<Int> elements_;
};

/// u * A = {u a : a in A}.
inline FiniteIntSet dilate(const Int& u, const FiniteIntSet& A) {
    if (u == 0) throw std::invalid_argument("dilate: factor must be nonzero");
    A.require_nonempty("dilate");
    std::vector<Int> out;
    out.reserve(A.size());
    for (const auto& a : A) out.push_back(u * a);
    if (u < 0) std::reverse(out.begin(), out.end());
    return FiniteIntSet::from_sorted(std::move(out));
}

/// A + {t}.
inline FiniteIntSet translate(const FiniteIntSet& A, const Int& t) {
    std::vector<Int> out;
    out.reserve(A.size());
    for (const auto& a : A) out.push_back(a + t);
    return FiniteIntSet::from_sorted(std::move(out));
}

/// -A.
inline FiniteIntSet reflect(const FiniteIntSet& A) { return dilate(-1, A); }

}  // namespace linform
