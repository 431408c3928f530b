#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace linform {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Kernels run on int64 when every intermediate value stays below this bound.
inline constexpr std::int64_t fast_path_limit = std::int64_t{1} << 62;

inline bool fits_int64(const Int& x) {
    return x >= std::numeric_limits<std::int64_t>::min() &&
           x <= std::numeric_limits<std::int64_t>::max();
}

inline std::optional<std::int64_t> to_int64(const Int& x) {
    if (!fits_int64(x)) return std::nullopt;
    return x.convert_to<std::int64_t>();
}

inline std::int64_t checked_int64(const Int& x, std::string_view what) {
    if (auto v = to_int64(x)) return *v;
    throw std::out_of_range(std::string(what) + ": value " + x.str() + " exceeds 64-bit range");
}

inline Int abs(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int gcd(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(abs(a), abs(b));
}

/// Least nonnegative residue of x modulo m (m > 0).
inline Int mod(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

inline std::int64_t mod(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

/// Parses a decimal integer with optional sign; throws std::invalid_argument naming the token.
inline Int parse_int(std::string_view token) {
    std::string_view t = token;
    while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
    while (!t.empty() && (t.back() == ' ' || t.back() == '\t' || t.back() == '\r')) t.remove_suffix(1);
    std::size_t i = 0;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) throw std::invalid_argument("not an integer: '" + std::string(token) + "'");
    for (std::size_t j = i; j < t.size(); ++j) {
        if (t[j] < '0' || t[j] > '9')
            throw std::invalid_argument("not an integer: '" + std::string(token) + "'");
    }
    Int value(std::string(t[0] == '+' ? t.substr(1) : t));
    return value;
}

inline Rational make_rational(const Int& num, const Int& den) { return Rational(num, den); }

inline std::string to_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// Decimal approximation for messages; never used in comparisons.
inline std::string approx(const Rational& r) {
    Int num = abs(boost::multiprecision::numerator(r)), den = boost::multiprecision::denominator(r);
    if (num == 0) return "0";
    const auto top = std::max(boost::multiprecision::msb(num), boost::multiprecision::msb(den));
    if (top > 60) {
        num >>= top - 60;
        den >>= top - 60;
    }
    std::ostringstream os;
    os << std::setprecision(6);
    if (r < 0) os << '-';
    if (den == 0) os << "> 2^60";
    else os << num.convert_to<double>() / den.convert_to<double>();
    return os.str();
}

}  // namespace linform
