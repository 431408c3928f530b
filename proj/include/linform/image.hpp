#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "linform/int_set.hpp"
#include "linform/linear_form.hpp"

namespace linform {

/// How f(A) is computed. All strategies give identical results.
enum class ImageStrategy {
    automatic,
    pairs,   // enumerate all pairs into a hash set
    merge,   // k-way merge of the sorted rows x + Y
    bitset,  // shift-or of a bitmap over the value range
};

inline std::string_view to_string(ImageStrategy s) {
    switch (s) {
        case ImageStrategy::automatic: return "auto";
        case ImageStrategy::pairs: return "pairs";
        case ImageStrategy::merge: return "merge";
        case ImageStrategy::bitset: return "bitset";
    }
    return "?";
}

inline ImageStrategy parse_strategy(std::string_view name) {
    if (name == "auto") return ImageStrategy::automatic;
    if (name == "pairs") return ImageStrategy::pairs;
    if (name == "merge") return ImageStrategy::merge;
    if (name == "bitset") return ImageStrategy::bitset;
    throw std::invalid_argument("unknown image strategy '" + std::string(name) + "'");
}

namespace kernel {

using Values = std::vector<std::int64_t>;

inline Values sumset_pairs(std::span<const std::int64_t> xs, std::span<const std::int64_t> ys) {
    std::unordered_set<std::int64_t> seen;
    seen.reserve(std::min<std::size_t>(xs.size() * ys.size(), std::size_t{1} << 24));
    for (auto x : xs)
        for (auto y : ys) seen.insert(x + y);
    Values out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

inline Values sumset_merge(std::span<const std::int64_t> xs, std::span<const std::int64_t> ys) {
    struct Head {
        std::int64_t value;
        std::uint32_t row;
        std::uint32_t col;
        bool operator>(const Head& o) const { return value > o.value; }
    };
    std::priority_queue<Head, std::vector<Head>, std::greater<>> heap;
    for (std::uint32_t r = 0; r < xs.size(); ++r) heap.push({xs[r] + ys[0], r, 0});
    Values out;
    while (!heap.empty()) {
        Head h = heap.top();
        heap.pop();
        if (out.empty() || out.back() != h.value) out.push_back(h.value);
        if (h.col + 1 < ys.size()) heap.push({xs[h.row] + ys[h.col + 1], h.row, h.col + 1});
    }
    return out;
}

/// Bitmap of X + Y over [min X + min Y, max X + max Y]; bit i stands for base + i.
struct SumBitmap {
    std::int64_t base = 0;
    std::vector<std::uint64_t> words;

    std::uint64_t count() const {
        std::uint64_t c = 0;
        for (auto w : words) c += static_cast<std::uint64_t>(std::popcount(w));
        return c;
    }

    Values values() const {
        Values out;
        for (std::size_t i = 0; i < words.size(); ++i) {
            std::uint64_t w = words[i];
            while (w) {
                const int b = std::countr_zero(w);
                out.push_back(base + static_cast<std::int64_t>(i * 64 + b));
                w &= w - 1;
            }
        }
        return out;
    }
};

inline SumBitmap sumset_bitmap(std::span<const std::int64_t> xs, std::span<const std::int64_t> ys) {
    const std::int64_t x0 = xs.front(), y0 = ys.front();
    const auto yrange = static_cast<std::uint64_t>(ys.back() - y0) + 1;
    const auto range = static_cast<std::uint64_t>(xs.back() - x0) + yrange;
    std::vector<std::uint64_t> ybits((yrange + 63) / 64, 0);
    for (auto y : ys) {
        const auto off = static_cast<std::uint64_t>(y - y0);
        ybits[off / 64] |= std::uint64_t{1} << (off % 64);
    }
    SumBitmap out;
    out.base = x0 + y0;
    out.words.assign((range + 63) / 64 + 1, 0);
    for (auto x : xs) {
        const auto shift = static_cast<std::uint64_t>(x - x0);
        const std::size_t ws = shift / 64;
        const unsigned bs = shift % 64;
        std::uint64_t* dst = out.words.data() + ws;
        if (bs == 0) {
            for (std::size_t i = 0; i < ybits.size(); ++i) dst[i] |= ybits[i];
        } else {
            for (std::size_t i = 0; i < ybits.size(); ++i) {
                dst[i] |= ybits[i] << bs;
                dst[i + 1] |= ybits[i] >> (64 - bs);
            }
        }
    }
    return out;
}

inline ImageStrategy choose(std::size_t nx, std::size_t ny, std::uint64_t range) {
    const double pair_cost = static_cast<double>(nx) * static_cast<double>(ny);
    const double bitset_cost = static_cast<double>(nx) * (static_cast<double>(range) / 64.0 + 1.0);
    if (range <= (std::uint64_t{1} << 30) && bitset_cost <= 2.0 * pair_cost) return ImageStrategy::bitset;
    if (pair_cost <= double(std::uint64_t{1} << 26)) return ImageStrategy::pairs;
    return ImageStrategy::merge;
}

inline Values sumset(std::span<const std::int64_t> xs, std::span<const std::int64_t> ys, ImageStrategy strategy) {
    if (strategy == ImageStrategy::automatic)
        strategy = choose(xs.size(), ys.size(), static_cast<std::uint64_t>((xs.back() - xs.front()) + (ys.back() - ys.front())));
    switch (strategy) {
        case ImageStrategy::pairs: return sumset_pairs(xs, ys);
        case ImageStrategy::merge: return sumset_merge(xs, ys);
        default: return sumset_bitmap(xs, ys).values();
    }
}

inline std::uint64_t sumset_size(std::span<const std::int64_t> xs, std::span<const std::int64_t> ys,
                                 ImageStrategy strategy) {
    if (strategy == ImageStrategy::automatic)
        strategy = choose(xs.size(), ys.size(), static_cast<std::uint64_t>((xs.back() - xs.front()) + (ys.back() - ys.front())));
    if (strategy == ImageStrategy::bitset) return sumset_bitmap(xs, ys).count();
    return sumset(xs, ys, strategy).size();
}

inline Values dilated(std::span<const std::int64_t> a, std::int64_t u) {
    Values out(a.begin(), a.end());
    for (auto& x : out) x *= u;
    if (u < 0) std::reverse(out.begin(), out.end());
    return out;
}

/// int64 copy of A when h_f * max|A| stays below fast_path_limit.
inline std::optional<Values> fast_path(const LinearForm& f, const FiniteIntSet& A) {
    if (f.height() * A.max_abs() >= fast_path_limit) return std::nullopt;
    Values out;
    out.reserve(A.size());
    for (const auto& a : A) out.push_back(a.convert_to<std::int64_t>());
    return out;
}

inline std::vector<Int> image_generic(const LinearForm& f, const FiniteIntSet& A) {
    std::vector<Int> cur;
    for (const auto& a : A) cur.push_back(f.coefficients()[0] * a);
    for (std::size_t i = 1; i < f.arity(); ++i) {
        std::vector<Int> next;
        next.reserve(cur.size() * A.size());
        for (const auto& c : cur)
            for (const auto& a : A) next.push_back(c + f.coefficients()[i] * a);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
    }
    std::sort(cur.begin(), cur.end());
    cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
    return cur;
}

}  // namespace kernel

/// f(A) = { u_1 a_1 + ... + u_n a_n : a_i in A }.
///
/// Computed as the iterated sumset u_1*A + ... + u_n*A on int64 when the values fit,
/// otherwise on arbitrary-precision integers (where the strategy choice is ignored).
inline FiniteIntSet image(const LinearForm& f, const FiniteIntSet& A, ImageStrategy strategy = ImageStrategy::automatic) {
    A.require_nonempty("image");
    auto fast = kernel::fast_path(f, A);
    if (!fast) return FiniteIntSet::from_sorted(kernel::image_generic(f, A));
    const auto& c = f.coefficients();
    kernel::Values cur = kernel::dilated(*fast, c[0].convert_to<std::int64_t>());
    for (std::size_t i = 1; i < c.size(); ++i)
        cur = kernel::sumset(cur, kernel::dilated(*fast, c[i].convert_to<std::int64_t>()), strategy);
    std::vector<Int> out(cur.begin(), cur.end());
    return FiniteIntSet::from_sorted(std::move(out));
}

/// |f(A)|; the last sumset step is counted without materializing when the bitset kernel runs.
inline std::uint64_t image_cardinality(const LinearForm& f, const FiniteIntSet& A,
                                       ImageStrategy strategy = ImageStrategy::automatic) {
    A.require_nonempty("image_cardinality");
    auto fast = kernel::fast_path(f, A);
    if (!fast) return kernel::image_generic(f, A).size();
    const auto& c = f.coefficients();
    kernel::Values cur = kernel::dilated(*fast, c[0].convert_to<std::int64_t>());
    if (c.size() == 1) return cur.size();
    for (std::size_t i = 1; i + 1 < c.size(); ++i)
        cur = kernel::sumset(cur, kernel::dilated(*fast, c[i].convert_to<std::int64_t>()), strategy);
    return kernel::sumset_size(cur, kernel::dilated(*fast, c.back().convert_to<std::int64_t>()), strategy);
}

/// A + B.
inline FiniteIntSet sumset(const FiniteIntSet& A, const FiniteIntSet& B, ImageStrategy strategy = ImageStrategy::automatic) {
    A.require_nonempty("sumset");
    B.require_nonempty("sumset");
    if (std::max(A.max_abs(), B.max_abs()) >= fast_path_limit / 2) {
        std::vector<Int> out;
        for (const auto& a : A)
            for (const auto& b : B) out.push_back(a + b);
        return FiniteIntSet(std::move(out));
    }
    kernel::Values xs, ys;
    for (const auto& a : A) xs.push_back(a.convert_to<std::int64_t>());
    for (const auto& b : B) ys.push_back(b.convert_to<std::int64_t>());
    auto v = kernel::sumset(xs, ys, strategy);
    return FiniteIntSet::from_sorted(std::vector<Int>(v.begin(), v.end()));
}

}  // namespace linform
