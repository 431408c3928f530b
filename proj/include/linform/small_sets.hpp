#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linform/affine.hpp"
#include "linform/image.hpp"
#include "linform/normalize.hpp"

namespace linform {

// ---------------------------------------------------------------------------
// Exceptional triples
// ---------------------------------------------------------------------------

struct ExceptionalTriple {
    FiniteIntSet canonical;  // affine_key of the class
    std::uint64_t cardinality = 0;

    friend bool operator==(const ExceptionalTriple&, const ExceptionalTriple&) = default;
};

struct TripleClassification {
    LinearForm form;
    Int bound;
    std::vector<ExceptionalTriple> exceptional;  // sorted by canonical
};

/// Enumerates {0, a, b} with 0 < a < b <= bound and gcd(a, b) = 1, keeps those with
/// |f(A)| < 9, one per full affine class. The default bound is u + |v|.
inline TripleClassification classify_triples(const LinearForm& f, std::optional<Int> bound = std::nullopt) {
    if (!is_normalized(f)) throw std::invalid_argument("classify_triples: form " + f.str() + " is not normalized");
    const Int min_bound = f.u() + abs(f.v());
    const Int b_max = bound.value_or(min_bound);
    if (b_max < min_bound)
        throw std::invalid_argument("classify_triples: bound must be at least u + |v| = " + min_bound.str());
    std::map<FiniteIntSet, std::uint64_t> found;
    for (Int b = 2; b <= b_max; ++b) {
        for (Int a = 1; a < b; ++a) {
            if (gcd(a, b) != 1) continue;
            FiniteIntSet A{std::vector<Int>{0, a, b}};
            const auto card = image_cardinality(f, A);
            if (card < 9) found.emplace(affine_key(A), card);
        }
    }
    TripleClassification out{f, b_max, {}};
    for (auto& [key, card] : found) out.exceptional.push_back({key, card});
    return out;
}

/// The exceptional classes predicted for a normalized form with u >= 2:
/// {0,|v|,u} and {0,|v|,u+|v|}, with |f| = 8 (u >= 3) or 7 and 8 for {0,1,2}, {0,1,3} (u = 2).
inline std::vector<ExceptionalTriple> predicted_exceptional_triples(const LinearForm& f) {
    if (!is_normalized(f) || f.u() < 2)
        throw std::invalid_argument("predicted_exceptional_triples: normalized form with u >= 2 required");
    const Int u = f.u(), w = abs(f.v());
    std::vector<ExceptionalTriple> out;
    if (u == 2) {
        out.push_back({affine_key(FiniteIntSet{0, 1, 2}), 7});
        out.push_back({affine_key(FiniteIntSet{0, 1, 3}), 8});
    } else {
        out.push_back({affine_key(FiniteIntSet{std::vector<Int>{0, w, u}}), 8});
        out.push_back({affine_key(FiniteIntSet{std::vector<Int>{0, w, u + w}}), 8});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.canonical < b.canonical; });
    return out;
}

// ---------------------------------------------------------------------------
// Separating witnesses
// ---------------------------------------------------------------------------

/// Sets A, B on which f and g compare in opposite directions.
struct WitnessPair {
    LinearForm f;
    LinearForm g;
    FiniteIntSet A;
    FiniteIntSet B;
    std::uint64_t f_A = 0, g_A = 0, f_B = 0, g_B = 0;

    bool separates() const { return (f_A < g_A && f_B > g_B) || (f_A > g_A && f_B < g_B); }
};

namespace detail {

inline WitnessPair make_witness(const LinearForm& f, const LinearForm& g, FiniteIntSet A, FiniteIntSet B) {
    WitnessPair w{f, g, std::move(A), std::move(B)};
    w.f_A = image_cardinality(f, w.A);
    w.g_A = image_cardinality(g, w.A);
    w.f_B = image_cardinality(f, w.B);
    w.g_B = image_cardinality(g, w.B);
    return w;
}

inline FiniteIntSet triple(const Int& a, const Int& b) { return FiniteIntSet{std::vector<Int>{0, a, b}}; }

}  // namespace detail

/// Three-element sets with |f(A)| < |g(A)| and |f(B)| > |g(B)| for normalized f, g with
/// u_1, u_2 >= 2 and (u_1, |v_1|) != (u_2, |v_2|).
inline WitnessPair three_set_witness(const LinearForm& f, const LinearForm& g) {
    if (!is_normalized(f) || !is_normalized(g))
        throw std::invalid_argument("three_set_witness: both forms must be normalized");
    if (f.u() < 2 || g.u() < 2) throw std::invalid_argument("three_set_witness: both leading coefficients must be >= 2");
    const Int u1 = f.u(), w1 = abs(f.v()), u2 = g.u(), w2 = abs(g.v());
    if (u1 == u2 && w1 == w2)
        throw std::invalid_argument("three_set_witness: (u, |v|) must differ; " + f.str() + " and " + g.str() +
                                    " agree on every 3-element set");
    // Order so that the first form is the "smaller" one, then swap the sets back.
    const bool swapped = (u1 > u2) || (u1 == u2 && w1 > w2);
    const Int a_u = swapped ? u2 : u1, a_w = swapped ? w2 : w1;
    const Int b_u = swapped ? u1 : u2, b_w = swapped ? w1 : w2;
    FiniteIntSet small_side, large_side;
    if (a_u < b_u && b_u != a_u + a_w) {
        small_side = detail::triple(a_w, a_u);
        large_side = detail::triple(b_w, b_u);
    } else if (a_u < b_u) {
        small_side = detail::triple(a_w, a_u);
        large_side = detail::triple(b_w, b_u + b_w);
    } else {
        small_side = detail::triple(a_w, a_u + a_w);
        large_side = detail::triple(b_w, b_u + b_w);
    }
    // small_side is exceptional for the smaller form, large_side for the larger one.
    WitnessPair w = swapped ? detail::make_witness(f, g, large_side, small_side)
                            : detail::make_witness(f, g, small_side, large_side);
    if (!(w.f_A < w.g_A && w.f_B > w.g_B))
        throw std::logic_error("three_set_witness: verification failed for " + f.str() + ", " + g.str());
    return w;
}

/// Four-element sets separating f = ux + vy from g = ux - vy, u > v >= 1, gcd(u, v) = 1.
/// u = 2: |f(A)| = 13 > 12 = |g(A)|, |f(B)| = 13 < 14 = |g(B)|.
/// u >= 3: |f(A)| = 14 > 13 = |g(A)|, |f(B)| = 13 < 14 = |g(B)|.
inline WitnessPair conjugate_four_set_witness(const Int& u, const Int& v) {
    if (!(u > v && v >= 1) || gcd(u, v) != 1)
        throw std::invalid_argument("conjugate_four_set_witness: need u > v >= 1 and gcd(u, v) = 1");
    const LinearForm f = LinearForm::binary(u, v), g = LinearForm::binary(u, -v);
    WitnessPair w = [&] {
        if (u == 2) return detail::make_witness(f, g, FiniteIntSet{0, 3, 4, 6}, FiniteIntSet{0, 4, 6, 7});
        const Int uu = u * u, vv = v * v, uv = u * v;
        return detail::make_witness(f, g, FiniteIntSet{std::vector<Int>{0, uu - vv, uu, uu + uv}},
                                    FiniteIntSet{std::vector<Int>{0, uu - uv, uu - vv, uu}});
    }();
    const std::array<std::uint64_t, 4> expected =
        u == 2 ? std::array<std::uint64_t, 4>{13, 12, 13, 14} : std::array<std::uint64_t, 4>{14, 13, 13, 14};
    if (std::array<std::uint64_t, 4>{w.f_A, w.g_A, w.f_B, w.g_B} != expected)
        throw std::logic_error("conjugate_four_set_witness: cardinalities differ from the expected pattern for (" +
                               u.str() + "," + v.str() + ")");
    return w;
}

struct FiveSetWitness {
    FiniteIntSet A;
    std::uint64_t f_card = 0;  // |f(A)| <= 19
    std::uint64_t d_card = 0;  // |A - A| = 21
};

/// a_0 < ... < a_4 with a_i - a_{i-1} = v^{4-i} u^{i-1}.
inline std::array<Int, 5> five_set_elements(const Int& u, const Int& v) {
    const Int v3 = v * v * v, v2u = v * v * u, vu2 = v * u * u, u3 = u * u * u;
    return {Int(0), v3, v3 + v2u, v3 + v2u + vu2, v3 + v2u + vu2 + u3};
}

/// One coincidence u x + v y = u x' + v y' among elements of the five-element set,
/// given as index pairs ((x, y), (x', y')).
struct Coincidence {
    std::array<int, 2> lhs;
    std::array<int, 2> rhs;
};

/// The six coincidences that force |f(A)| <= 19 (each value has two representations).
inline constexpr std::array<Coincidence, 6> five_set_coincidences = {{
    {{1, 1}, {0, 2}},
    {{2, 1}, {0, 3}},
    {{2, 2}, {1, 3}},
    {{3, 1}, {0, 4}},
    {{3, 2}, {1, 4}},
    {{3, 3}, {2, 4}},
}};

/// Five-element set with |f(A)| <= 19 < 21 = |d(A)| for f = ux + vy, u > v >= 1.
inline FiveSetWitness five_set_witness(const Int& u, const Int& v) {
    if (!(u > v && v >= 1) || gcd(u, v) != 1)
        throw std::invalid_argument("five_set_witness: need u > v >= 1 and gcd(u, v) = 1");
    const auto e = five_set_elements(u, v);
    FiveSetWitness w{FiniteIntSet(std::vector<Int>(e.begin(), e.end()))};
    w.f_card = image_cardinality(LinearForm::binary(u, v), w.A);
    w.d_card = image_cardinality(LinearForm::difference(), w.A);
    if (w.d_card != 21 || w.f_card > 19)
        throw std::logic_error("five_set_witness: verification failed for (" + u.str() + "," + v.str() + ")");
    return w;
}

/// [0, t-1], on which f = ux + vy and g = ux - vy both attain t^2 for t <= u.
inline FiniteIntSet ap_equality_set(const Int& u, const Int& v, const Int& t) {
    if (!(u > v && v >= 1) || gcd(u, v) != 1)
        throw std::invalid_argument("ap_equality_set: need u > v >= 1 and gcd(u, v) = 1");
    if (t < 1 || t > u) throw std::invalid_argument("ap_equality_set: need 1 <= t <= u");
    return FiniteIntSet::interval(0, t - 1);
}

}  // namespace linform
