#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "linform/image.hpp"
#include "linform/numtheory.hpp"

namespace linform {

/// A nonempty set of congruence classes modulo m >= 2, stored as sorted least
/// nonnegative representatives.
class ResidueSet {
public:
    ResidueSet() = default;

    ResidueSet(Int modulus, std::vector<Int> classes) : modulus_(std::move(modulus)), classes_(std::move(classes)) {
        if (modulus_ < 2) throw std::invalid_argument("ResidueSet: modulus must be >= 2, got " + modulus_.str());
        std::sort(classes_.begin(), classes_.end());
        classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
        if (classes_.empty()) throw std::invalid_argument("ResidueSet: at least one class is required");
        if (classes_.front() < 0 || classes_.back() >= modulus_)
            throw std::invalid_argument("ResidueSet: classes must lie in [0, " + Int(modulus_ - 1).str() + "]");
    }

    ResidueSet(long long modulus, std::initializer_list<long long> classes)
        : ResidueSet(Int(modulus), std::vector<Int>(classes.begin(), classes.end())) {}

    /// Reduces arbitrary integers modulo m.
    static ResidueSet reduce(const Int& modulus, std::span<const Int> values) {
        std::vector<Int> classes;
        classes.reserve(values.size());
        for (const auto& x : values) classes.push_back(mod(x, modulus));
        return ResidueSet(modulus, std::move(classes));
    }

    static ResidueSet full(const Int& modulus) {
        std::vector<Int> all;
        for (Int c = 0; c < modulus; ++c) all.push_back(c);
        return ResidueSet(modulus, std::move(all));
    }

    const Int& modulus() const noexcept { return modulus_; }
    const std::vector<Int>& classes() const noexcept { return classes_; }
    std::size_t size() const noexcept { return classes_.size(); }
    bool is_full() const { return Int(classes_.size()) == modulus_; }
    bool contains(const Int& c) const { return std::binary_search(classes_.begin(), classes_.end(), mod(c, modulus_)); }

    friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

private:
    Int modulus_ = 2;
    std::vector<Int> classes_{0};
};

namespace kernel {

inline bool modular_fast_path(const LinearForm& f, const Int& m) { return f.height() * m < fast_path_limit; }

/// Sorted distinct classes of sum_i u_i r_i mod m, all arithmetic in int64.
inline Values modular_image_i64(std::span<const std::int64_t> coeffs, std::span<const std::int64_t> classes,
                                std::int64_t m) {
    auto scaled = [&](std::int64_t u) {
        Values out;
        out.reserve(classes.size());
        const std::int64_t um = mod(u, m);
        for (auto r : classes) out.push_back(static_cast<std::int64_t>(static_cast<__int128>(um) * r % m));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    Values cur = scaled(coeffs[0]);
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
        Values sums = sumset(cur, scaled(coeffs[i]), ImageStrategy::automatic);
        for (auto& s : sums)
            if (s >= m) s -= m;
        std::sort(sums.begin(), sums.end());
        sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
        cur = std::move(sums);
    }
    return cur;
}

}  // namespace kernel

/// f(R) = { sum u_i r_i mod m : r_i in R }.
inline ResidueSet modular_image(const LinearForm& f, const ResidueSet& R) {
    const Int& m = R.modulus();
    if (kernel::modular_fast_path(f, m)) {
        std::vector<std::int64_t> coeffs, classes;
        const std::int64_t mm = m.convert_to<std::int64_t>();
        for (const auto& c : f.coefficients()) coeffs.push_back(mod(c, m).convert_to<std::int64_t>());
        for (const auto& c : R.classes()) classes.push_back(c.convert_to<std::int64_t>());
        auto v = kernel::modular_image_i64(coeffs, classes, mm);
        return ResidueSet(m, std::vector<Int>(v.begin(), v.end()));
    }
    std::vector<Int> cur;
    for (const auto& r : R.classes()) cur.push_back(mod(f.coefficients()[0] * r, m));
    for (std::size_t i = 1; i < f.arity(); ++i) {
        std::vector<Int> next;
        for (const auto& c : cur)
            for (const auto& r : R.classes()) next.push_back(mod(c + f.coefficients()[i] * r, m));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
    }
    return ResidueSet(m, std::move(cur));
}

inline std::uint64_t modular_image_cardinality(const LinearForm& f, const ResidueSet& R) {
    return modular_image(f, R).size();
}

inline constexpr std::uint64_t default_materialization_cap = 10'000'000;

inline void require_pairwise_coprime(std::span<const Int> moduli, const char* op) {
    for (std::size_t i = 0; i < moduli.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (gcd(moduli[i], moduli[j]) != 1)
                throw std::invalid_argument(std::string(op) + ": moduli " + moduli[j].str() + " and " + moduli[i].str() +
                                            " are not coprime");
}

/// Product modulus and product cardinality of a CRT combination, without materializing it.
struct CrtShape {
    Int modulus = 1;
    Int size = 1;
};

inline CrtShape crt_shape(std::span<const ResidueSet> locals) {
    CrtShape s;
    for (const auto& r : locals) {
        s.modulus *= r.modulus();
        s.size *= r.size();
    }
    return s;
}

/// The set of classes mod m = prod m_i that reduce into R_i for every i.
/// Throws std::length_error when the result would exceed `cap` classes.
inline ResidueSet crt_product(std::span<const ResidueSet> locals, std::uint64_t cap = default_materialization_cap) {
    if (locals.empty()) throw std::invalid_argument("crt_product: at least one residue set is required");
    std::vector<Int> moduli;
    for (const auto& r : locals) moduli.push_back(r.modulus());
    require_pairwise_coprime(moduli, "crt_product");
    const CrtShape shape = crt_shape(locals);
    if (shape.size > cap)
        throw std::length_error("crt_product: " + shape.size.str() + " classes exceed the materialization cap");

    if (shape.modulus < fast_path_limit) {
        std::int64_t acc_mod = 1;
        std::vector<std::int64_t> acc{0};
        for (const auto& r : locals) {
            const std::int64_t mi = r.modulus().convert_to<std::int64_t>();
            const std::int64_t inv = inverse_mod(Int(acc_mod % mi), Int(mi)).convert_to<std::int64_t>();
            std::vector<std::int64_t> next;
            next.reserve(acc.size() * r.size());
            for (auto a : acc) {
                for (const auto& cls : r.classes()) {
                    const std::int64_t b = cls.convert_to<std::int64_t>();
                    const std::int64_t t = static_cast<std::int64_t>(static_cast<__int128>(mod(b - a, mi)) * inv % mi);
                    next.push_back(a + acc_mod * t);
                }
            }
            acc = std::move(next);
            acc_mod *= mi;
        }
        std::sort(acc.begin(), acc.end());
        return ResidueSet(Int(acc_mod), std::vector<Int>(acc.begin(), acc.end()));
    }

    Int acc_mod = 1;
    std::vector<Int> acc{0};
    for (const auto& r : locals) {
        const Int inv = inverse_mod(acc_mod % r.modulus(), r.modulus());
        std::vector<Int> next;
        for (const auto& a : acc)
            for (const auto& b : r.classes()) next.push_back(a + acc_mod * mod((b - a) * inv, r.modulus()));
        acc = std::move(next);
        acc_mod *= r.modulus();
    }
    return ResidueSet(acc_mod, std::move(acc));
}

/// One representative per class, taken from the window [start, start + m - 1].
/// For a linear form f this satisfies |f(R)| <= |f(A)| <= 2 h_f |f(R)|.
inline FiniteIntSet rectify(const ResidueSet& R, const Int& window_start = 0) {
    std::vector<Int> reps;
    reps.reserve(R.size());
    for (const auto& c : R.classes()) reps.push_back(window_start + mod(c - window_start, R.modulus()));
    return FiniteIntSet(std::move(reps));
}

/// A residue set together with |f(R)|, |g(R)| and their exact ratio.
struct LocalSolution {
    ResidueSet residues;
    Int f_card;
    Int g_card;
    Rational ratio;
};

inline LocalSolution make_local_solution(const LinearForm& f, const LinearForm& g, ResidueSet R) {
    const Int fc = modular_image_cardinality(f, R);
    const Int gc = modular_image_cardinality(g, R);
    return LocalSolution{std::move(R), fc, gc, Rational(fc, gc)};
}

/// For solutions whose cardinalities come from a proven criterion rather than enumeration.
inline LocalSolution make_certified_local_solution(ResidueSet R, const Int& f_card, const Int& g_card) {
    if (f_card < 1 || g_card < 1 || f_card > R.modulus() || g_card > R.modulus())
        throw std::invalid_argument("LocalSolution: cardinalities must lie in [1, m]");
    return LocalSolution{std::move(R), f_card, g_card, Rational(f_card, g_card)};
}

}  // namespace linform
