#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "linform/int_set.hpp"

namespace linform {

/// Translate so the minimum is 0, then divide by the gcd of the nonzero elements.
/// Two sets are equivalent under positive affine maps iff their canonicals agree.
inline FiniteIntSet affine_canonical(const FiniteIntSet& A) {
    if (A.size() < 2) throw std::invalid_argument("affine_canonical: set needs at least two elements");
    const Int& lo = A.min();
    Int g = 0;
    for (const auto& a : A) g = gcd(g, a - lo);
    std::vector<Int> out;
    out.reserve(A.size());
    for (const auto& a : A) out.push_back((a - lo) / g);
    return FiniteIntSet::from_sorted(std::move(out));
}

/// Full affine-equivalence key (negative scaling allowed): the smaller of the
/// canonicals of A and -A.
inline FiniteIntSet affine_key(const FiniteIntSet& A) {
    FiniteIntSet c = affine_canonical(A);
    FiniteIntSet r = affine_canonical(reflect(A));
    return std::min(c, r);
}

inline bool affinely_equivalent(const FiniteIntSet& A, const FiniteIntSet& B) {
    if (A.size() != B.size()) return false;
    if (A.size() < 2) return true;
    return affine_key(A) == affine_key(B);
}

}  // namespace linform
