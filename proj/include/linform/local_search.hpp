#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "linform/modular.hpp"

namespace linform {

struct LocalSearchOptions {
    std::uint64_t budget = 10'000;  // total candidate evaluations, split across restarts
    std::uint64_t seed = 0;
    unsigned restarts = 4;
    unsigned threads = 1;  // results do not depend on this
};

namespace detail {

/// Hill climbing over subsets R of Z/mZ minimizing |f(R)| / |g(R)| subject to g(R) = Z/mZ.
class RatioSearch {
public:
    RatioSearch(const LinearForm& f, const LinearForm& g, std::int64_t m) : m_(m), marks_(static_cast<std::size_t>(m)) {
        for (const auto& c : f.coefficients()) fu_.push_back(mod(c, Int(m)).convert_to<std::int64_t>());
        for (const auto& c : g.coefficients()) gu_.push_back(mod(c, Int(m)).convert_to<std::int64_t>());
    }

    struct Score {
        std::int64_t f = 0;
        std::int64_t g = 0;
        bool feasible() const { return g > 0; }
    };

    struct Candidate {
        std::vector<std::int64_t> classes;
        Score score;
    };

    /// True iff a is strictly better than b: smaller ratio, then lexicographically smaller set.
    static bool better(const Candidate& a, const Candidate& b) {
        const auto lhs = static_cast<__int128>(a.score.f) * b.score.g;
        const auto rhs = static_cast<__int128>(b.score.f) * a.score.g;
        if (lhs != rhs) return lhs < rhs;
        return a.classes < b.classes;
    }

    /// g(R) must cover Z/mZ; infeasible sets score g = 0.
    Score score(const std::vector<std::int64_t>& classes) {
        Score s;
        s.g = count(gu_, classes);
        if (s.g != m_) {
            s.g = 0;
            return s;
        }
        s.f = count(fu_, classes);
        return s;
    }

    Candidate run(std::uint64_t budget, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::vector<char> in(static_cast<std::size_t>(m_), 1);
        auto as_classes = [&] {
            std::vector<std::int64_t> out;
            for (std::int64_t i = 0; i < m_; ++i)
                if (in[static_cast<std::size_t>(i)]) out.push_back(i);
            return out;
        };
        Candidate cur{as_classes(), {}};
        cur.score = score(cur.classes);
        std::uint64_t spent = 1;

        // Greedy seeding: drop the element whose removal gives the best feasible ratio.
        while (spent < budget && cur.classes.size() > 1) {
            std::vector<std::int64_t> order = cur.classes;
            std::shuffle(order.begin(), order.end(), rng);
            std::optional<Candidate> best;
            for (auto x : order) {
                if (spent >= budget) break;
                in[static_cast<std::size_t>(x)] = 0;
                Candidate c{as_classes(), {}};
                c.score = score(c.classes);
                ++spent;
                in[static_cast<std::size_t>(x)] = 1;
                if (!c.score.feasible()) continue;
                if (!best || ratio_less(c.score, best->score)) best = std::move(c);
            }
            if (!best || ratio_less(cur.score, best->score)) break;
            for (auto& v : in) v = 0;
            for (auto x : best->classes) in[static_cast<std::size_t>(x)] = 1;
            cur = std::move(*best);
        }

        Candidate best = cur;
        std::uniform_int_distribution<std::int64_t> pick(0, m_ - 1);
        while (spent < budget) {
            ++spent;
            const std::int64_t x = pick(rng);
            const std::int64_t y = pick(rng);
            const int kind = static_cast<int>(rng() % 3);
            auto flip = [&](std::int64_t e) { in[static_cast<std::size_t>(e)] ^= 1; };
            if (kind == 0) {
                flip(x);  // add or remove a single class
            } else if (kind == 1) {
                if (in[static_cast<std::size_t>(x)] == in[static_cast<std::size_t>(y)]) continue;
                flip(x);  // swap a member for a non-member
                flip(y);
            } else {
                if (!in[static_cast<std::size_t>(x)]) continue;
                flip(x);  // pure removal
            }
            Candidate next{as_classes(), {}};
            if (next.classes.empty()) {
                undo(kind, x, y, flip);
                continue;
            }
            next.score = score(next.classes);
            if (next.score.feasible() && !ratio_less(cur.score, next.score)) {
                cur = std::move(next);
                if (better(cur, best)) best = cur;
            } else {
                undo(kind, x, y, flip);
            }
        }
        return best;
    }

private:
    static bool ratio_less(const Score& a, const Score& b) {
        return static_cast<__int128>(a.f) * b.g < static_cast<__int128>(b.f) * a.g;
    }

    template <class Flip>
    static void undo(int kind, std::int64_t x, std::int64_t y, Flip& flip) {
        flip(x);
        if (kind == 1) flip(y);
    }

    std::int64_t count(const std::vector<std::int64_t>& coeffs, const std::vector<std::int64_t>& classes) {
        ++epoch_;
        if (epoch_ == 0) {
            std::fill(marks_.begin(), marks_.end(), 0u);
            epoch_ = 1;
        }
        // Binary forms only need one pass; longer forms iterate the partial sums.
        std::vector<std::int64_t> cur;
        for (auto r : classes) cur.push_back(static_cast<std::int64_t>(static_cast<__int128>(coeffs[0]) * r % m_));
        for (std::size_t i = 1; i < coeffs.size(); ++i) {
            ++epoch_;
            std::vector<std::int64_t> next;
            for (auto c : cur) {
                for (auto r : classes) {
                    const auto s = static_cast<std::int64_t>((static_cast<__int128>(coeffs[i]) * r + c) % m_);
                    if (marks_[static_cast<std::size_t>(s)] != epoch_) {
                        marks_[static_cast<std::size_t>(s)] = epoch_;
                        next.push_back(s);
                    }
                }
            }
            cur = std::move(next);
        }
        std::sort(cur.begin(), cur.end());
        return static_cast<std::int64_t>(std::unique(cur.begin(), cur.end()) - cur.begin());
    }

    std::int64_t m_;
    std::vector<std::int64_t> fu_, gu_;
    std::vector<std::uint32_t> marks_;
    std::uint32_t epoch_ = 0;
};

}  // namespace detail

/// Heuristic search for R in Z/mZ with g(R) = Z/mZ and |f(R)| / |g(R)| as small as
/// possible. Deterministic for a fixed seed and independent of the thread count.
inline LocalSolution local_ratio_search(const LinearForm& f, const LinearForm& g, const Int& m,
                                        const LocalSearchOptions& opt = {}) {
    if (m < 2) throw std::invalid_argument("local_ratio_search: modulus must be >= 2");
    if (m > 1'000'000) throw std::invalid_argument("local_ratio_search: modulus too large for subset search");
    if (f.arity() != g.arity()) throw std::invalid_argument("local_ratio_search: forms must have the same arity");
    const auto mm = m.convert_to<std::int64_t>();
    const unsigned restarts = std::max(1u, opt.restarts);
    const std::uint64_t per_restart = std::max<std::uint64_t>(1, opt.budget / restarts);
    std::vector<detail::RatioSearch::Candidate> results(restarts);
    auto work = [&](unsigned r) {
        detail::RatioSearch search(f, g, mm);
        results[r] = search.run(per_restart, opt.seed + r);
    };
    const unsigned threads = std::clamp(opt.threads, 1u, restarts);
    if (threads == 1) {
        for (unsigned r = 0; r < restarts; ++r) work(r);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (unsigned r = t; r < restarts; r += threads) work(r);
            });
        for (auto& th : pool) th.join();
    }
    auto best = results.front();
    for (const auto& c : results)
        if (!c.score.feasible() ? false : (!best.score.feasible() || detail::RatioSearch::better(c, best))) best = c;
    if (!best.score.feasible()) return make_local_solution(f, g, ResidueSet::full(m));
    return make_local_solution(f, g, ResidueSet(m, std::vector<Int>(best.classes.begin(), best.classes.end())));
}

}  // namespace linform
