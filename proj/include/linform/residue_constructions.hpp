#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "linform/modular.hpp"
#include "linform/normalize.hpp"
#include "linform/numtheory.hpp"

namespace linform {

/// H = { x^k mod p : x in F_p^* }, the subgroup of index k when k | p - 1.
struct PowerSubgroup {
    std::int64_t p = 0;
    std::int64_t k = 0;
    std::int64_t order = 0;  // (p - 1) / k
    std::vector<std::int64_t> classes;

    bool contains(std::int64_t x) const { return std::binary_search(classes.begin(), classes.end(), mod(x, p)); }

    ResidueSet residues() const { return ResidueSet(Int(p), std::vector<Int>(classes.begin(), classes.end())); }
};

inline PowerSubgroup power_subgroup(std::int64_t p, std::int64_t k) {
    if (!is_prime(p)) throw std::invalid_argument("power_subgroup: " + std::to_string(p) + " is not prime");
    if (k < 1 || (p - 1) % k != 0)
        throw std::invalid_argument("power_subgroup: k = " + std::to_string(k) + " must divide p - 1 = " + std::to_string(p - 1));
    PowerSubgroup H{p, k, (p - 1) / k, {}};
    // H is generated by g^k for a primitive root g.
    const auto gen = powmod(static_cast<std::uint64_t>(primitive_root(p)), static_cast<std::uint64_t>(k),
                            static_cast<std::uint64_t>(p));
    H.classes.reserve(static_cast<std::size_t>(H.order));
    std::uint64_t x = 1;
    for (std::int64_t i = 0; i < H.order; ++i) {
        H.classes.push_back(static_cast<std::int64_t>(x));
        x = mulmod(x, gen, static_cast<std::uint64_t>(p));
    }
    std::sort(H.classes.begin(), H.classes.end());
    return H;
}

/// The nonzero quadratic residues modulo an odd prime.
inline PowerSubgroup quadratic_residues(std::int64_t p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("quadratic_residues: odd prime required, got " + std::to_string(p));
    return power_subgroup(p, 2);
}

/// Checks by enumeration that s(R_p) = d(R_p) = Z/pZ for p = 1 mod 4, p > 5.
inline bool qr_sum_diff_full(std::int64_t p) {
    if (!is_prime(p) || p % 4 != 1 || p <= 5)
        throw std::invalid_argument("qr_sum_diff_full: need a prime p = 1 mod 4 with p > 5, got " + std::to_string(p));
    const ResidueSet R = quadratic_residues(p).residues();
    return modular_image(LinearForm::sum(), R).is_full() && modular_image(LinearForm::difference(), R).is_full();
}

namespace detail {

inline std::int64_t reduce_coeff(const Int& c, std::int64_t p) { return mod(c, Int(p)).convert_to<std::int64_t>(); }

inline void require_coprime_form(const LinearForm& f, std::int64_t p, const char* op) {
    for (const auto& c : f.coefficients())
        if (mod(c, Int(p)) == 0) throw std::invalid_argument(std::string(op) + ": p = " + std::to_string(p) + " divides a coefficient");
}

/// True iff u h_1 + v h_2 = 0 for some h_1, h_2 in H (one lookup per h_1).
inline bool zero_in_image(const LinearForm& f, const PowerSubgroup& H) {
    const std::int64_t p = H.p;
    const auto u = static_cast<std::uint64_t>(reduce_coeff(f.u(), p));
    const auto v = static_cast<std::uint64_t>(reduce_coeff(f.v(), p));
    const auto minus_u_over_v = mulmod(p - u, inverse_mod(Int(v), Int(p)).convert_to<std::uint64_t>(), p);
    for (auto h : H.classes)
        if (H.contains(static_cast<std::int64_t>(mulmod(minus_u_over_v, static_cast<std::uint64_t>(h), p)))) return true;
    return false;
}

}  // namespace detail

/// 0 in f(R_p), by enumeration. Agrees with jacobi(-uv, p) = +1.
inline bool zero_in_f_of_qr(const Int& u, const Int& v, std::int64_t p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("zero_in_f_of_qr: odd prime required");
    const LinearForm f = LinearForm::binary(u, v);
    detail::require_coprime_form(f, p, "zero_in_f_of_qr");
    return detail::zero_in_image(f, quadratic_residues(p));
}

// ---------------------------------------------------------------------------
// Coverage of F_p by f(H)
// ---------------------------------------------------------------------------

struct CoverageReport {
    CoverageReport(LinearForm f, PowerSubgroup H) : form(std::move(f)), subgroup(std::move(H)) {}

    LinearForm form;
    PowerSubgroup subgroup;
    bool covered_nonzero = false;  // F_p^* is contained in f(H)
    bool zero_covered = false;     // 0 in f(H)
    /// r(x) = #{(h1, h2) in H^2 : f(h1, h2) = x}, indexed by x in [0, p).
    std::vector<std::uint64_t> representation_counts;

    std::uint64_t image_size() const {
        return static_cast<std::uint64_t>(std::count_if(representation_counts.begin(), representation_counts.end(),
                                                        [](auto r) { return r > 0; }));
    }

    std::uint64_t total_count() const {
        std::uint64_t t = 0;
        for (auto r : representation_counts) t += r;
        return t;
    }

    /// r(x) = r(x h) for all x != 0 and h in H. Checking a generator of H suffices.
    bool coset_constant() const {
        const std::int64_t p = subgroup.p;
        const auto gen = powmod(static_cast<std::uint64_t>(primitive_root(p)), static_cast<std::uint64_t>(subgroup.k),
                                static_cast<std::uint64_t>(p));
        for (std::int64_t x = 1; x < p; ++x) {
            const auto y = mulmod(static_cast<std::uint64_t>(x), gen, static_cast<std::uint64_t>(p));
            if (representation_counts[static_cast<std::size_t>(x)] != representation_counts[y]) return false;
        }
        return true;
    }
};

/// Enumerates r(x) over H x H. For p > k^4 every nonzero class is represented, and the
/// report asserts it.
inline CoverageReport coverage(const LinearForm& f, const PowerSubgroup& H, unsigned threads = 1) {
    f.require_binary("coverage");
    if (H.order < 2) throw std::invalid_argument("coverage: subgroup order must be at least 2");
    const std::int64_t p = H.p;
    detail::require_coprime_form(f, p, "coverage");
    const auto u = static_cast<std::uint64_t>(detail::reduce_coeff(f.u(), p));
    const auto v = static_cast<std::uint64_t>(detail::reduce_coeff(f.v(), p));
    const auto pu = static_cast<std::uint64_t>(p);

    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(H.classes.size()));
    std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(static_cast<std::size_t>(p), 0));
    std::vector<std::uint64_t> vh(H.classes.size());
    for (std::size_t j = 0; j < H.classes.size(); ++j) vh[j] = mulmod(v, static_cast<std::uint64_t>(H.classes[j]), pu);
    auto work = [&](unsigned t) {
        auto& counts = partial[t];
        for (std::size_t i = t; i < H.classes.size(); i += threads) {
            const std::uint64_t uh = mulmod(u, static_cast<std::uint64_t>(H.classes[i]), pu);
            for (auto w : vh) {
                std::uint64_t s = uh + w;
                if (s >= pu) s -= pu;
                ++counts[s];
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    CoverageReport rep{f, H};
    rep.representation_counts = std::move(partial[0]);
    for (unsigned t = 1; t < threads; ++t)
        for (std::size_t x = 0; x < rep.representation_counts.size(); ++x) rep.representation_counts[x] += partial[t][x];
    rep.zero_covered = rep.representation_counts[0] > 0;
    rep.covered_nonzero = std::all_of(rep.representation_counts.begin() + 1, rep.representation_counts.end(),
                                      [](auto r) { return r > 0; });
    if (Int(p) > boost::multiprecision::pow(Int(H.k), 4) && !rep.covered_nonzero)
        throw std::logic_error("coverage: p > k^4 but some nonzero class is not represented (p = " + std::to_string(p) + ")");
    return rep;
}

// ---------------------------------------------------------------------------
// Local solutions from quadratic residues and k-th powers
// ---------------------------------------------------------------------------

struct LocalConstructionOptions {
    Int search_limit = default_search_limit;
    /// Subgroups up to this order are verified by full enumeration; larger ones rely on
    /// the p > k^4 coverage criterion plus a direct check that 0 is excluded.
    std::int64_t enumeration_limit = 10'000;
    unsigned threads = 1;
};

struct LocalConstructionResult {
    LocalConstructionResult(LinearForm f_, LinearForm g_, std::int64_t k, Int a)
        : f(std::move(f_)), g(std::move(g_)), exponent(k), excluded_value(std::move(a)) {}

    LinearForm f;
    LinearForm g;
    std::int64_t exponent = 2;  // k = 2 for quadratic residues, the chosen prime q otherwise
    Int excluded_value;         // the value a whose non-residuosity keeps 0 out of f(H)
    std::vector<LocalSolution> locals;
    PrimeSearchResult search;
    std::string predicate;
};

namespace detail {

inline void require_sum_or_difference(const LinearForm& g, const char* op) {
    if (g != LinearForm::sum() && g != LinearForm::difference())
        throw std::invalid_argument(std::string(op) + ": g must be x + y or x - y");
}

/// Local solution at p for H, after checking 0 is not in f(H) and g(H) = F_p.
inline LocalSolution verified_local(const LinearForm& f, const LinearForm& g, const PowerSubgroup& H,
                                    const LocalConstructionOptions& opt) {
    const std::int64_t p = H.p;
    if (H.order <= opt.enumeration_limit) {
        const auto fr = coverage(f, H, opt.threads);
        const auto gr = coverage(g, H, opt.threads);
        if (fr.zero_covered || !gr.covered_nonzero || !gr.zero_covered)
            throw std::logic_error("local solution at p = " + std::to_string(p) + " failed enumeration");
        return make_certified_local_solution(H.residues(), fr.image_size(), gr.image_size());
    }
    if (Int(p) <= boost::multiprecision::pow(Int(H.k), 4))
        throw std::logic_error("local solution at p = " + std::to_string(p) + " is neither enumerable nor covered by p > k^4");
    if (zero_in_image(f, H) || !zero_in_image(g, H))
        throw std::logic_error("local solution at p = " + std::to_string(p) + " failed the zero test");
    return make_certified_local_solution(H.residues(), Int(p - 1), Int(p));
}

inline void require_normalized_pair(const Int& u, const Int& v, const char* op) {
    if (!is_normalized(LinearForm::binary(u, v)) || !(u > abs(v)))
        throw std::invalid_argument(std::string(op) + ": need a normalized form with u > |v| >= 1");
}

}  // namespace detail

/// Primes p = 1 mod 4, p > 5, p not dividing uv, with (-uv | p) = -1, each giving the
/// local solution R_p (quadratic residues): f(R_p) = F_p^*, g(R_p) = F_p for g in {s, d}.
inline LocalConstructionResult qr_local_solutions(const Int& u, const Int& v, std::size_t count,
                                                  const LinearForm& g = LinearForm::sum(),
                                                  const LocalConstructionOptions& opt = {}) {
    detail::require_normalized_pair(u, v, "qr_local_solutions");
    detail::require_sum_or_difference(g, "qr_local_solutions");
    const Int uv = u * v;
    if (is_perfect_square(abs(uv)))
        throw std::invalid_argument("qr_local_solutions: |uv| = " + abs(uv).str() + " is a perfect square");
    const LinearForm f = LinearForm::binary(u, v);
    LocalConstructionResult out{f, g, 2, Int(-uv)};
    out.predicate = "p does not divide uv and jacobi(" + Int(-uv).str() + ", p) = -1";
    PrimeSearchSpec spec;
    spec.residue_conditions = {{1, 4}};
    spec.lower_bound = 5;
    spec.search_limit = opt.search_limit;
    spec.extra_predicate = PrimePredicate{out.predicate, [uv](std::int64_t p) {
                                              return uv % p != 0 && jacobi(Int(-uv), Int(p)) == -1;
                                          }};
    out.search = find_primes(spec, count);
    for (const auto& p : out.search.primes)
        out.locals.push_back(detail::verified_local(f, g, quadratic_residues(p.convert_to<std::int64_t>()), opt));
    return out;
}

/// Smallest odd prime q such that -u^(q-1) v is not a perfect q-th power.
inline std::int64_t select_exponent(const Int& u, const Int& v) {
    for (std::int64_t q = 3; q < 1000; q += 2) {
        if (!is_prime(q)) continue;
        const Int a = -boost::multiprecision::pow(u, static_cast<unsigned>(q - 1)) * v;
        if (!integer_root(a, static_cast<unsigned>(q))) return q;
    }
    throw std::logic_error("select_exponent: no odd prime q below 1000 works");
}

/// Primes p = 1 mod q, p > q^4, p not dividing uv, with a = -u^(q-1) v not a q-th power
/// mod p. For each, H = q-th powers gives f(H) = F_p^* and g(H) = F_p for g in {s, d}.
inline LocalConstructionResult kth_power_local_solutions(const Int& u, const Int& v, std::size_t count,
                                                         const LinearForm& g = LinearForm::sum(),
                                                         const LocalConstructionOptions& opt = {}) {
    detail::require_normalized_pair(u, v, "kth_power_local_solutions");
    detail::require_sum_or_difference(g, "kth_power_local_solutions");
    const LinearForm f = LinearForm::binary(u, v);
    const std::int64_t q = select_exponent(u, v);
    const Int a = -boost::multiprecision::pow(u, static_cast<unsigned>(q - 1)) * v;
    const Int uv = u * v;
    LocalConstructionResult out{f, g, q, a};
    out.predicate = "p does not divide uv and " + a.str() + " is not a " + std::to_string(q) + "-th power mod p";
    PrimeSearchSpec spec;
    spec.residue_conditions = {{1, q}};
    spec.lower_bound = boost::multiprecision::pow(Int(q), 4);
    spec.search_limit = opt.search_limit;
    spec.extra_predicate = PrimePredicate{out.predicate, [uv, a, q](std::int64_t p) {
                                              return uv % p != 0 && !is_qth_power_residue(a, Int(q), Int(p));
                                          }};
    out.search = find_primes(spec, count);
    for (const auto& p : out.search.primes)
        out.locals.push_back(detail::verified_local(f, g, power_subgroup(p.convert_to<std::int64_t>(), q), opt));
    return out;
}

}  // namespace linform
