#pragma once

// Checks shared by `linform verify-paper` and the acceptance binary. Each check is
// keyed by the location it reproduces ("sec1" ... "sec7", plus "pipeline").

#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "linform/affine.hpp"
#include "linform/amplify.hpp"
#include "linform/construction.hpp"
#include "linform/image.hpp"
#include "linform/modular.hpp"
#include "linform/normalize.hpp"
#include "linform/residue_constructions.hpp"
#include "linform/small_sets.hpp"

namespace linform {

/// The four hand-built residue sets modulo 13, 15, 16, 19 for f = 2x + y.
inline std::vector<ResidueSet> reference_locals() {
    return {
        ResidueSet(13, {0, 1, 6, 7, 9, 11}),
        ResidueSet(15, {0, 1, 5, 6, 10, 11, 13}),
        ResidueSet(16, {0, 1, 3, 5, 7, 9, 11, 13, 15}),
        ResidueSet(19, {0, 1, 11, 12, 14, 16, 18}),
    };
}

inline FiniteIntSet mstd_example() { return FiniteIntSet{0, 2, 3, 4, 7, 11, 12, 14}; }

// ---------------------------------------------------------------------------
// Local-to-global pipeline
// ---------------------------------------------------------------------------

enum class LocalSource { qr, kpower };

inline LocalSource parse_local_source(std::string_view s) {
    if (s == "qr") return LocalSource::qr;
    if (s == "kpower") return LocalSource::kpower;
    throw std::invalid_argument("unknown local source '" + std::string(s) + "' (expected qr or kpower)");
}

struct PipelineResult {
    LocalConstructionResult locals;
    ConstructionReport report;
};

/// Finds `count` local solutions from the given source and feeds them to the builder.
inline PipelineResult run_pipeline(const LinearForm& f, const LinearForm& g, LocalSource source, std::size_t count,
                                   const BuildOptions& build = {}, const LocalConstructionOptions& local = {}) {
    f.require_binary("run_pipeline");
    auto found = source == LocalSource::qr ? qr_local_solutions(f.u(), f.v(), count, g, local)
                                           : kth_power_local_solutions(f.u(), f.v(), count, g, local);
    auto report = build_separating_set(f, g, found.locals, build);
    if (found.search.shortfall)
        report.message += "; prime search shortfall: found " + std::to_string(found.search.primes.size()) + " of " +
                          std::to_string(count);
    return {std::move(found), std::move(report)};
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

struct CheckOptions {
    std::vector<ResidueSet> locals = reference_locals();
    unsigned threads = 1;
    std::uint64_t seed = 20240601;
};

struct CheckOutcome {
    bool ok = false;
    std::string detail;
};

struct Check {
    int criterion;
    std::string key;
    std::string name;
    double budget_seconds;
    std::function<CheckOutcome(const CheckOptions&)> run;
};

struct CheckResult {
    int criterion = 0;
    std::string key;
    std::string name;
    bool ok = false;        // correctness
    bool in_budget = false; // runtime below budget
    double seconds = 0;
    double budget_seconds = 0;
    std::string detail;

    bool passed() const { return ok && in_budget; }
};

namespace detail {

template <class... Ts>
std::string cat(const Ts&... xs) {
    std::ostringstream os;
    (os << ... << xs);
    return os.str();
}

inline std::vector<LinearForm> normalized_forms(int u_lo, int u_hi) {
    std::vector<LinearForm> out;
    for (int u = u_lo; u <= u_hi; ++u)
        for (int v = -u; v <= u; ++v)
            if (v != 0 && std::gcd(u, v) == 1 && u >= std::abs(v)) out.push_back(LinearForm::binary(u, v));
    return out;
}

inline LinearForm random_binary_form(std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<int> c(1, bound);
    std::bernoulli_distribution neg(0.5);
    auto pick = [&] { return neg(rng) ? -c(rng) : c(rng); };
    return LinearForm::binary(pick(), pick());
}

inline CheckOutcome check_mstd(const CheckOptions&) {
    const auto A = mstd_example();
    const auto s = image_cardinality(LinearForm::sum(), A);
    const auto d = image_cardinality(LinearForm::difference(), A);
    return {s == 26 && d == 25, cat("|A+A| = ", s, ", |A-A| = ", d)};
}

inline CheckOutcome check_reference_construction(const CheckOptions& opt) {
    const ResidueSet R = crt_product(opt.locals);
    const FiniteIntSet A = rectify(R, 1);
    const auto f = image_cardinality(LinearForm::binary(2, 1), A);
    const auto s = image_cardinality(LinearForm::sum(), A);
    Rational product = 1;
    for (const auto& r : opt.locals) product *= make_local_solution(LinearForm::binary(2, 1), LinearForm::sum(), r).ratio;
    const bool ok = R.modulus() == 59280 && A.size() == 2646 && f == 108014 && s == 114575;
    return {ok, cat("m = ", R.modulus(), ", |A| = ", A.size(), ", |f(A)| = ", f, ", |s(A)| = ", s,
                    ", local ratio product = ", to_string(product), " (threshold 1/6)")};
}

inline CheckOutcome check_triples(const CheckOptions&) {
    int forms = 0;
    for (const auto& f : normalized_forms(2, 10)) {
        ++forms;
        const auto got = classify_triples(f).exceptional;
        const auto want = predicted_exceptional_triples(f);
        if (got != want) return {false, cat("mismatch for ", f)};
        for (const auto& t : want)
            if (image_cardinality(f, t.canonical) != t.cardinality) return {false, cat("cardinality mismatch for ", f)};
    }
    return {true, cat(forms, " normalized forms with 2 <= u <= 10")};
}

inline CheckOutcome check_four_sets(const CheckOptions&) {
    int pairs = 0;
    for (int u = 2; u <= 20; ++u)
        for (int v = 1; v < u; ++v) {
            if (std::gcd(u, v) != 1) continue;
            const auto w = conjugate_four_set_witness(u, v);
            const std::array<std::uint64_t, 4> expected =
                u == 2 ? std::array<std::uint64_t, 4>{13, 12, 13, 14} : std::array<std::uint64_t, 4>{14, 13, 13, 14};
            if (std::array<std::uint64_t, 4>{w.f_A, w.g_A, w.f_B, w.g_B} != expected || w.A.size() != 4 ||
                w.B.size() != 4)
                return {false, cat("pattern broken at (", u, ",", v, ")")};
            ++pairs;
        }
    return {true, cat(pairs, " coprime pairs with u <= 20")};
}

inline CheckOutcome check_five_sets(const CheckOptions&) {
    int pairs = 0;
    std::uint64_t worst = 0;
    for (int u = 2; u <= 50; ++u)
        for (int v = 1; v < u; ++v) {
            if (std::gcd(u, v) != 1) continue;
            const auto w = five_set_witness(u, v);
            if (w.d_card != 21 || w.f_card > 19 || w.A.size() != 5) return {false, cat("failed at (", u, ",", v, ")")};
            worst = std::max(worst, w.f_card);
            ++pairs;
        }
    return {true, cat(pairs, " coprime pairs with u <= 50, max |f(A)| = ", worst)};
}

inline CheckOutcome check_ap(const CheckOptions&) {
    int cases = 0;
    for (int u = 2; u <= 12; ++u)
        for (int v = 1; v < u; ++v) {
            if (std::gcd(u, v) != 1) continue;
            for (int t = 1; t <= u; ++t) {
                const auto A = ap_equality_set(u, v, t);
                const auto fc = image_cardinality(LinearForm::binary(u, v), A);
                const auto gc = image_cardinality(LinearForm::binary(u, -v), A);
                if (fc != static_cast<std::uint64_t>(t * t) || gc != fc)
                    return {false, cat("failed at (", u, ",", v, ",", t, ")")};
                ++cases;
            }
        }
    return {true, cat(cases, " (u, v, t) cases with u <= 12")};
}

inline CheckOutcome check_amplification(const CheckOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    for (int i = 0; i < 20; ++i) {
        std::uniform_int_distribution<int> size(1, 12), elem(-40, 40);
        std::vector<Int> xs;
        for (int n = size(rng); n > 0; --n) xs.push_back(elem(rng));
        const FiniteIntSet A(std::move(xs));
        const auto f = random_binary_form(rng, 5);
        const auto g = random_binary_form(rng, 5);
        const auto amp = amplify(f, g, A);
        const auto fa = image_cardinality(f, A), ga = image_cardinality(g, A);
        if (amp.A_M.size() != A.size() * A.size() || image_cardinality(f, amp.A_M) != fa * fa ||
            image_cardinality(g, amp.A_M) != ga * ga)
            return {false, cat("instance ", i, ": f = ", f, ", g = ", g, ", A = ", A)};
    }
    return {true, "20 random instances"};
}

inline CheckOutcome check_local_properties(const CheckOptions& opt) {
    std::mt19937_64 rng(opt.seed + 1);
    auto random_residues = [&](std::int64_t m) {
        std::uniform_int_distribution<std::int64_t> c(0, m - 1), n(1, m);
        std::vector<Int> xs;
        for (auto k = n(rng); k > 0; --k) xs.push_back(c(rng));
        return ResidueSet::reduce(m, xs);
    };
    std::uniform_int_distribution<std::int64_t> mod(2, 50);
    for (int i = 0; i < 100; ++i) {
        std::int64_t m1 = mod(rng), m2 = mod(rng);
        while (std::gcd(m1, m2) != 1) m2 = mod(rng);
        const auto R1 = random_residues(m1), R2 = random_residues(m2);
        const auto f = random_binary_form(rng, 6);
        const std::vector<ResidueSet> pair{R1, R2};
        const auto R = crt_product(pair);
        if (R.size() != R1.size() * R2.size() ||
            modular_image_cardinality(f, R) != modular_image_cardinality(f, R1) * modular_image_cardinality(f, R2))
            return {false, cat("CRT instance ", i, " (m1 = ", m1, ", m2 = ", m2, ", f = ", f, ")")};
    }
    std::uniform_int_distribution<std::int64_t> big(2, 400);
    for (int i = 0; i < 100; ++i) {
        const auto R = random_residues(big(rng));
        const auto f = random_binary_form(rng, 6);
        const auto fr = modular_image_cardinality(f, R);
        for (int start : {0, 1}) {
            const auto fa = Int(image_cardinality(f, rectify(R, start)));
            if (fa < fr || fa > 2 * f.height() * fr)
                return {false, cat("sandwich instance ", i, " window ", start, " (f = ", f, ")")};
        }
    }
    return {true, "100 CRT instances, 100 sandwich instances x 2 windows"};
}

inline CheckOutcome check_quadratic_residues(const CheckOptions&) {
    int primes = 0, cases = 0;
    for (std::int64_t p = 13; p <= 997; p += 4)
        if (is_prime(p)) {
            if (!qr_sum_diff_full(p)) return {false, cat("s or d of the squares mod ", p, " is not everything")};
            ++primes;
        }
    for (std::int64_t p = 3; p <= 200; p += 2) {
        if (!is_prime(p)) continue;
        for (const auto& f : normalized_forms(1, 10)) {
            const Int uv = f.u() * f.v();
            if (uv % p == 0) continue;
            if (zero_in_f_of_qr(f.u(), f.v(), p) != (jacobi(Int(-uv), Int(p)) == 1))
                return {false, cat("zero membership disagrees for ", f, " at p = ", p)};
            ++cases;
        }
    }
    return {true, cat(primes, " primes for s and d; ", cases, " zero-membership cases")};
}

inline CheckOutcome check_coverage(const CheckOptions& opt) {
    const std::vector<LinearForm> forms{LinearForm::sum(), LinearForm::difference(), LinearForm::binary(2, 1),
                                        LinearForm::binary(3, 2)};
    int reports = 0;
    for (std::int64_t k : {2, 3}) {
        for (std::int64_t p = k * k * k * k + 1; p <= 2000; ++p) {
            if (!is_prime(p) || (p - 1) % k != 0) continue;
            const auto H = power_subgroup(p, k);
            for (const auto& f : forms) {
                if ((f.u() * f.v()) % p == 0) continue;
                CoverageReport rep{f, H};
                try {
                    rep = coverage(f, H, opt.threads);
                } catch (const std::logic_error&) {
                    return {false, cat("F_p^* not covered: ", f, ", p = ", p, ", k = ", k)};
                }
                if (!rep.covered_nonzero || !rep.coset_constant() ||
                    rep.total_count() != static_cast<std::uint64_t>(H.order * H.order))
                    return {false, cat("report invariant broken: ", f, ", p = ", p, ", k = ", k)};
                ++reports;
            }
        }
    }
    return {true, cat(reports, " coverage reports")};
}

inline std::string describe(const ConstructionReport& r) {
    std::string s = cat(r.locals.size(), " locals, m has ", r.combined_modulus.str().size(), " digits, product ~ ",
                        approx(r.ratio_product), " vs ", to_string(r.target_threshold));
    if (r.f_card) s += cat(", |f(A)| = ", *r.f_card, ", |g(A)| = ", *r.g_card);
    if (r.last_attempt)
        s += cat(", largest materialized prefix m = ", r.last_attempt->modulus, ": |f(A)| = ", r.last_attempt->f_card,
                 ", |g(A)| = ", r.last_attempt->g_card);
    return s;
}

inline CheckOutcome check_pipeline(const CheckOptions& opt) {
    BuildOptions build;
    build.mode = BuildMode::adaptive;
    LocalConstructionOptions local;
    local.threads = opt.threads;
    const auto qr = run_pipeline(LinearForm::binary(2, 1), LinearForm::sum(), LocalSource::qr, 40, build, local);
    const auto kp = run_pipeline(LinearForm::binary(2, 1), LinearForm::difference(), LocalSource::kpower, 40, build, local);
    auto strict = [](const ConstructionReport& r) {
        // A success must carry either a materialized strict inequality or the threshold certificate.
        if (!r.success) return false;
        if (r.f_card) return *r.f_card < *r.g_card;
        return r.certificate == Certificate::threshold && r.ratio_product < r.target_threshold;
    };
    return {strict(qr.report) && strict(kp.report),
            cat("qr/s: ", describe(qr.report), (qr.report.success ? " [ok]" : " [fail]"), "; kpower/d: ",
                describe(kp.report), (kp.report.success ? " [ok]" : " [fail]"))};
}

}  // namespace detail

inline const std::vector<Check>& reproduction_checks() {
    static const std::vector<Check> checks{
        {1, "sec1", "more sums than differences", 0.001, detail::check_mstd},
        {2, "sec4", "explicit 2x+y construction cardinalities", 5, detail::check_reference_construction},
        {3, "sec2", "exceptional triples", 10, detail::check_triples},
        {4, "sec2", "four-element conjugate witnesses", 1, detail::check_four_sets},
        {5, "sec3", "five-element set against x-y", 5, detail::check_five_sets},
        {6, "sec2", "arithmetic progression equality", 1, detail::check_ap},
        {7, "sec1", "amplification squares cardinalities", 5, detail::check_amplification},
        {8, "sec5", "CRT multiplicativity and rectification", 5, detail::check_local_properties},
        {9, "sec6", "quadratic residue properties", 30, detail::check_quadratic_residues},
        {10, "sec7", "k-th power coverage", 60, detail::check_coverage},
        {11, "pipeline", "local-to-global construction", 300, detail::check_pipeline},
    };
    return checks;
}

inline CheckResult run_check(const Check& c, const CheckOptions& opt) {
    CheckResult r;
    r.criterion = c.criterion;
    r.key = c.key;
    r.name = c.name;
    r.budget_seconds = c.budget_seconds;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        auto out = c.run(opt);
        r.ok = out.ok;
        r.detail = std::move(out.detail);
    } catch (const std::exception& e) {
        r.ok = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.in_budget = r.seconds < r.budget_seconds;
    return r;
}

/// Runs the checks whose key is in `only` (all when empty).
inline std::vector<CheckResult> run_checks(const CheckOptions& opt, const std::vector<std::string>& only = {}) {
    std::vector<CheckResult> out;
    for (const auto& c : reproduction_checks()) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.key) == only.end()) continue;
        out.push_back(run_check(c, opt));
    }
    return out;
}

}  // namespace linform
