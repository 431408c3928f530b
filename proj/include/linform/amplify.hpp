#pragma once

#include <stdexcept>
#include <vector>

#include "linform/image.hpp"

namespace linform {

struct Amplification {
    Int M;
    FiniteIntSet A_M;
};

/// m_{f,g}(A) = max |s| over A, f(A) and g(A).
inline Int amplification_bound(const LinearForm& f, const LinearForm& g, const FiniteIntSet& A) {
    Int m = A.max_abs();
    m = std::max(m, image(f, A).max_abs());
    m = std::max(m, image(g, A).max_abs());
    return m;
}

/// A_M = A + M*A with M the least integer above 2 m_{f,g}(A). Then |A_M| = |A|^2 and
/// |f(A_M)| = |f(A)|^2, |g(A_M)| = |g(A)|^2.
inline Amplification amplify(const LinearForm& f, const LinearForm& g, const FiniteIntSet& A) {
    A.require_nonempty("amplify");
    if (f.arity() != g.arity()) throw std::invalid_argument("amplify: forms must have the same arity");
    Int M = 2 * amplification_bound(f, g, A) + 1;
    std::vector<Int> out;
    out.reserve(A.size() * A.size());
    for (const auto& hi : A)
        for (const auto& lo : A) out.push_back(lo + M * hi);
    return {M, FiniteIntSet(std::move(out))};
}

}  // namespace linform
