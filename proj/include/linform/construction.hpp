#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "linform/image.hpp"
#include "linform/modular.hpp"

namespace linform {

/// How build_separating_set decides when to stop consuming local solutions.
enum class BuildMode {
    /// Stop once prod |f(R_i)|/|g(R_i)| < 1/(2 h_f); success is then guaranteed.
    threshold,
    /// Combine every given local and test |f(A)| < |g(A)| directly.
    direct,
    /// After each local: stop on the threshold, or materialize when small enough and
    /// stop if the direct comparison already succeeds.
    adaptive,
};

inline std::string_view to_string(BuildMode m) {
    switch (m) {
        case BuildMode::threshold: return "threshold";
        case BuildMode::direct: return "direct";
        case BuildMode::adaptive: return "adaptive";
    }
    return "?";
}

enum class Certificate {
    none,
    direct,     // |f(A)| < |g(A)| computed on the materialized set
    threshold,  // ratio product below 1/(2 h_f); A may not be materialized
};

inline std::string_view to_string(Certificate c) {
    switch (c) {
        case Certificate::none: return "none";
        case Certificate::direct: return "direct";
        case Certificate::threshold: return "threshold";
    }
    return "?";
}

struct BuildOptions {
    BuildMode mode = BuildMode::threshold;
    Int window_start = 0;
    /// Largest combined modulus for which A is materialized.
    Int modulus_cap = 10'000'000;
    /// Largest |A| that is materialized.
    std::uint64_t set_cap = default_materialization_cap;
};

struct ConstructionReport {
    ConstructionReport(LinearForm f, LinearForm g) : form_f(std::move(f)), form_g(std::move(g)) {}

    LinearForm form_f;
    LinearForm form_g;
    std::vector<LocalSolution> locals;  // the prefix actually used
    Int combined_modulus = 1;
    Int window_start = 0;
    Int set_size = 1;  // prod |R_i| = |A|
    Rational ratio_product = 1;
    Rational target_threshold = 1;  // 1/(2 h_f)
    bool threshold_met = false;
    std::optional<FiniteIntSet> A;
    std::optional<std::uint64_t> f_card;
    std::optional<std::uint64_t> g_card;
    bool success = false;
    Certificate certificate = Certificate::none;
    std::string message;

    /// Adaptive mode: the largest prefix that was materialized without success.
    struct Attempt {
        std::size_t locals = 0;
        Int modulus;
        std::uint64_t f_card = 0;
        std::uint64_t g_card = 0;
    };
    std::optional<Attempt> last_attempt;

    Int window_end() const { return window_start + combined_modulus - 1; }
};

namespace detail {

inline bool materializable(const CrtShape& shape, const BuildOptions& opt) {
    return shape.modulus <= opt.modulus_cap && shape.size <= opt.set_cap;
}

inline void materialize(ConstructionReport& rep, const BuildOptions& opt) {
    std::vector<ResidueSet> sets;
    for (const auto& l : rep.locals) sets.push_back(l.residues);
    const ResidueSet combined = crt_product(sets, opt.set_cap);
    rep.A = rectify(combined, rep.window_start);
    rep.f_card = image_cardinality(rep.form_f, *rep.A);
    rep.g_card = image_cardinality(rep.form_g, *rep.A);
}

}  // namespace detail

/// Consumes local solutions in order, combines them by CRT and rectifies to an integer
/// set A with |f(A)| < |g(A)|. Running out of locals yields a failure report.
inline ConstructionReport build_separating_set(const LinearForm& f, const LinearForm& g,
                                               std::span<const LocalSolution> locals, const BuildOptions& opt = {}) {
    if (f.arity() != g.arity()) throw std::invalid_argument("build_separating_set: forms must have the same arity");
    {
        std::vector<Int> moduli;
        for (const auto& l : locals) moduli.push_back(l.residues.modulus());
        require_pairwise_coprime(moduli, "build_separating_set");
    }
    ConstructionReport rep{f, g};
    rep.window_start = opt.window_start;
    rep.target_threshold = Rational(1, 2 * f.height());

    auto finish_threshold = [&] {
        rep.threshold_met = true;
        rep.success = true;
        rep.certificate = Certificate::threshold;
        if (detail::materializable({rep.combined_modulus, rep.set_size}, opt)) {
            detail::materialize(rep, opt);
            if (!(*rep.f_card < *rep.g_card))
                throw std::logic_error("build_separating_set: threshold met but |f(A)| >= |g(A)|");
            rep.message = "ratio product below 1/(2h_f); verified on the materialized set";
        } else {
            rep.message = "ratio product below 1/(2h_f); set not materialized";
        }
    };

    for (const auto& local : locals) {
        rep.A.reset();
        rep.f_card.reset();
        rep.g_card.reset();
        rep.locals.push_back(local);
        rep.combined_modulus *= local.residues.modulus();
        rep.set_size *= local.residues.size();
        rep.ratio_product *= local.ratio;
        if (opt.mode == BuildMode::direct) continue;
        if (rep.ratio_product < rep.target_threshold) {
            finish_threshold();
            return rep;
        }
        if (opt.mode == BuildMode::adaptive && detail::materializable({rep.combined_modulus, rep.set_size}, opt)) {
            detail::materialize(rep, opt);
            if (*rep.f_card < *rep.g_card) {
                rep.success = true;
                rep.certificate = Certificate::direct;
                rep.message = "|f(A)| < |g(A)| on the materialized set";
                return rep;
            }
            rep.last_attempt = ConstructionReport::Attempt{rep.locals.size(), rep.combined_modulus, *rep.f_card,
                                                           *rep.g_card};
            rep.A.reset();
            rep.f_card.reset();
            rep.g_card.reset();
        }
    }

    if (opt.mode == BuildMode::direct) {
        if (rep.locals.empty()) {
            rep.message = "no local solutions given";
            return rep;
        }
        rep.threshold_met = rep.ratio_product < rep.target_threshold;
        if (!detail::materializable({rep.combined_modulus, rep.set_size}, opt))
            throw std::length_error("build_separating_set: combined set too large to materialize");
        detail::materialize(rep, opt);
        rep.success = *rep.f_card < *rep.g_card;
        rep.certificate = rep.success ? Certificate::direct : Certificate::none;
        rep.message = rep.success ? "|f(A)| < |g(A)| on the materialized set" : "|f(A)| >= |g(A)| on the materialized set";
        return rep;
    }

    rep.message = "local solutions exhausted; ratio product " + approx(rep.ratio_product) + " not below threshold " +
                  to_string(rep.target_threshold);
    if (const auto& a = rep.last_attempt)
        rep.message += "; last materialized prefix (" + std::to_string(a->locals) + " locals, m = " + a->modulus.str() +
                       ") gave |f(A)| = " + std::to_string(a->f_card) + ", |g(A)| = " + std::to_string(a->g_card);
    return rep;
}

}  // namespace linform
