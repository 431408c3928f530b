#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linform/integer.hpp"

namespace linform {

// ---------------------------------------------------------------------------
// Modular exponentiation
// ---------------------------------------------------------------------------

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

inline Int powmod(const Int& base, const Int& exp, const Int& m) {
    if (exp < 0) throw std::invalid_argument("powmod: negative exponent");
    if (m <= 0) throw std::invalid_argument("powmod: modulus must be positive");
    return boost::multiprecision::powm(mod(base, m), exp, m);
}

// ---------------------------------------------------------------------------
// Jacobi symbol
// ---------------------------------------------------------------------------

namespace detail {

template <class I>
int jacobi_nonneg(I a, I n) {
    int result = 1;
    a %= n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const int r = static_cast<int>(n % 8);
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

}  // namespace detail

/// Jacobi symbol (a|n) for odd n >= 1. Equals the Legendre symbol when n is prime.
inline int jacobi(const Int& a, const Int& n) {
    if (n < 1 || (n & 1) == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive, got " + n.str());
    return detail::jacobi_nonneg<Int>(mod(a, n), n);
}

inline int jacobi(std::int64_t a, std::int64_t n) {
    if (n < 1 || (n & 1) == 0)
        throw std::invalid_argument("jacobi: modulus must be odd and positive, got " + std::to_string(n));
    return detail::jacobi_nonneg<std::uint64_t>(static_cast<std::uint64_t>(mod(a, n)), static_cast<std::uint64_t>(n));
}

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

// Miller-Rabin with the first 13 prime bases is exact below this bound.
inline const Int& primality_limit() {
    static const Int limit("3317044064679887385961981");
    return limit;
}

namespace detail {

inline constexpr std::array<std::uint32_t, 13> mr_bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

inline bool miller_rabin_u64(std::uint64_t n) {
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : mr_bases) {
        if (a % n == 0) continue;
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline bool miller_rabin_big(const Int& n) {
    Int d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint32_t base : mr_bases) {
        Int x = boost::multiprecision::powm(Int(base), d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = x * x % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace detail

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 43 * 43) return true;
    return detail::miller_rabin_u64(static_cast<std::uint64_t>(n));
}

/// Exact primality test. Throws std::out_of_range above primality_limit(), where the
/// fixed witness set is no longer proven deterministic.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (auto small = to_int64(n)) return is_prime(*small);
    if (n >= primality_limit())
        throw std::out_of_range("is_prime: " + n.str() + " is beyond the deterministic range");
    for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u}) {
        if (n % p == 0) return false;
    }
    if (n <= std::numeric_limits<std::uint64_t>::max())
        return detail::miller_rabin_u64(n.convert_to<std::uint64_t>());
    return detail::miller_rabin_big(n);
}

// ---------------------------------------------------------------------------
// Chinese remainder theorem
// ---------------------------------------------------------------------------

struct Congruence {
    Int residue;
    Int modulus;

    friend bool operator==(const Congruence&, const Congruence&) = default;
};

/// Extended gcd: returns (g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0.
inline std::tuple<Int, Int, Int> extended_gcd(const Int& a, const Int& b) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

/// Modular inverse of a modulo m; throws if gcd(a, m) != 1.
inline Int inverse_mod(const Int& a, const Int& m) {
    auto [g, x, y] = extended_gcd(mod(a, m), m);
    if (g != 1) throw std::invalid_argument("inverse_mod: " + a.str() + " is not invertible modulo " + m.str());
    return mod(x, m);
}

/// Merges two congruences whose moduli may share factors. Returns nullopt when inconsistent.
inline std::optional<Congruence> merge_congruences(const Congruence& a, const Congruence& b) {
    auto [g, x, y] = extended_gcd(a.modulus, b.modulus);
    Int diff = b.residue - a.residue;
    if (diff % g != 0) return std::nullopt;
    Int lcm = a.modulus / g * b.modulus;
    Int step = mod(diff / g * x, b.modulus / g);
    return Congruence{mod(a.residue + a.modulus * step, lcm), lcm};
}

/// Combines congruences with pairwise coprime moduli into a single class modulo their product.
inline Congruence crt_combine(std::span<const Congruence> pairs) {
    Congruence acc{0, 1};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& c = pairs[i];
        if (c.modulus < 1) throw std::invalid_argument("crt_combine: modulus must be positive, got " + c.modulus.str());
        for (std::size_t j = 0; j < i; ++j) {
            if (gcd(pairs[j].modulus, c.modulus) != 1)
                throw std::invalid_argument("crt_combine: moduli " + pairs[j].modulus.str() + " and " + c.modulus.str() +
                                            " are not coprime");
        }
        acc = *merge_congruences(acc, Congruence{mod(c.residue, c.modulus), c.modulus});
    }
    return acc;
}

inline Congruence crt_combine(std::initializer_list<Congruence> pairs) {
    return crt_combine(std::span<const Congruence>(pairs.begin(), pairs.size()));
}

// ---------------------------------------------------------------------------
// Power residues and integer roots
// ---------------------------------------------------------------------------

/// True iff a is a q-th power modulo the prime p, where q is prime and q | p - 1.
inline bool is_qth_power_residue(const Int& a, const Int& q, const Int& p) {
    if (!is_prime(q)) throw std::invalid_argument("is_qth_power_residue: q = " + q.str() + " is not prime");
    if (!is_prime(p)) throw std::invalid_argument("is_qth_power_residue: p = " + p.str() + " is not prime");
    if ((p - 1) % q != 0)
        throw std::invalid_argument("is_qth_power_residue: q = " + q.str() + " does not divide p - 1 = " + Int(p - 1).str());
    if (mod(a, p) == 0) throw std::invalid_argument("is_qth_power_residue: p divides a");
    return powmod(a, (p - 1) / q, p) == 1;
}

/// Exact q-th root of a in the integers, if one exists (negative a only for odd q).
inline std::optional<Int> integer_root(const Int& a, unsigned q) {
    if (q == 0) throw std::invalid_argument("integer_root: degree must be positive");
    if (q == 1) return a;
    if (a < 0) {
        if (q % 2 == 0) return std::nullopt;
        auto r = integer_root(-a, q);
        if (!r) return std::nullopt;
        return Int(-*r);
    }
    if (a < 2) return a;
    // Binary search on [0, 2^(bits/q + 1)].
    const unsigned bits = boost::multiprecision::msb(a) + 1;
    Int lo = 0, hi = Int(1) << (bits / q + 1);
    while (lo < hi) {
        Int mid = (lo + hi + 1) >> 1;
        if (boost::multiprecision::pow(mid, q) <= a)
            lo = mid;
        else
            hi = mid - 1;
    }
    if (boost::multiprecision::pow(lo, q) == a) return lo;
    return std::nullopt;
}

inline bool is_perfect_square(const Int& a) { return a >= 0 && integer_root(a, 2).has_value(); }

/// Distinct prime factors of n >= 1 by trial division.
inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Smallest generator of the multiplicative group modulo the prime p.
inline std::int64_t primitive_root(std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("primitive_root: " + std::to_string(p) + " is not prime");
    if (p == 2) return 1;
    const auto factors = prime_factors(p - 1);
    for (std::int64_t g = 2; g < p; ++g) {
        bool generator = true;
        for (auto q : factors) {
            if (powmod(static_cast<std::uint64_t>(g), static_cast<std::uint64_t>((p - 1) / q), static_cast<std::uint64_t>(p)) == 1) {
                generator = false;
                break;
            }
        }
        if (generator) return g;
    }
    throw std::logic_error("primitive_root: none found");
}

// ---------------------------------------------------------------------------
// Prime search in arithmetic progressions
// ---------------------------------------------------------------------------

/// A named predicate over candidate primes, e.g. "jacobi(-2, p) = -1".
struct PrimePredicate {
    std::string name;
    std::function<bool(std::int64_t)> test;
};

inline constexpr std::int64_t default_search_limit = 1'000'000;

struct PrimeSearchSpec {
    std::vector<Congruence> residue_conditions;
    Int lower_bound = 0;
    std::optional<PrimePredicate> extra_predicate;
    Int search_limit = default_search_limit;

    void validate() const {
        for (const auto& c : residue_conditions) {
            if (c.modulus < 2)
                throw std::invalid_argument("prime search: modulus must be >= 2, got " + c.modulus.str());
            if (gcd(c.residue, c.modulus) != 1)
                throw std::invalid_argument("prime search: residue " + c.residue.str() + " is not coprime to modulus " +
                                            c.modulus.str());
        }
        if (lower_bound >= search_limit)
            throw std::invalid_argument("prime search: lower bound " + lower_bound.str() + " is not below limit " +
                                        search_limit.str());
    }
};

struct PrimeSearchResult {
    std::vector<Int> primes;
    std::size_t requested = 0;
    bool shortfall = false;  // the limit was hit before `requested` primes were found
    Congruence progression{0, 1};
};

/// The `count` smallest primes p in (lower_bound, search_limit] satisfying every
/// condition, in increasing order. A shortfall is reported, not thrown; inconsistent
/// residue conditions throw.
inline PrimeSearchResult find_primes(const PrimeSearchSpec& spec, std::size_t count) {
    spec.validate();
    Congruence prog{0, 1};
    for (const auto& c : spec.residue_conditions) {
        auto merged = merge_congruences(prog, Congruence{mod(c.residue, c.modulus), c.modulus});
        if (!merged) throw std::invalid_argument("prime search: residue conditions have no common solution");
        prog = *merged;
    }
    PrimeSearchResult result;
    result.requested = count;
    result.progression = prog;
    const std::int64_t limit = checked_int64(spec.search_limit, "prime search limit");
    const std::int64_t step = checked_int64(prog.modulus, "prime search modulus");
    const Int lower = spec.lower_bound < 0 ? Int(-1) : spec.lower_bound;
    if (lower >= limit) {
        result.shortfall = count > 0;
        return result;
    }
    // First member of the progression strictly above the lower bound.
    const std::int64_t lo = lower.convert_to<std::int64_t>();
    std::int64_t candidate = lo + 1 + mod(prog.residue.convert_to<std::int64_t>() - (lo + 1), step);
    for (; candidate <= limit && result.primes.size() < count; candidate += step) {
        if (!is_prime(candidate)) continue;
        if (spec.extra_predicate && !spec.extra_predicate->test(candidate)) continue;
        result.primes.emplace_back(candidate);
    }
    result.shortfall = result.primes.size() < count;
    return result;
}

}  // namespace linform
