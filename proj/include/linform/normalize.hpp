#pragma once

#include <string_view>
#include <vector>

#include "linform/linear_form.hpp"

namespace linform {

/// Moves that leave |f(A)| unchanged for every A.
enum class NormalizationStep {
    divide_by_gcd,  // (u, v) -> (u/g, v/g)
    swap,           // (u, v) -> (v, u)
    negate,         // (u, v) -> (-u, -v)
};

inline std::string_view to_string(NormalizationStep s) {
    switch (s) {
        case NormalizationStep::divide_by_gcd: return "divide_by_gcd";
        case NormalizationStep::swap: return "swap";
        case NormalizationStep::negate: return "negate";
    }
    return "?";
}

struct NormalizationTrace {
    LinearForm original;
    LinearForm normalized;
    std::vector<NormalizationStep> steps;
};

inline bool is_normalized(const LinearForm& f) {
    if (!f.is_binary()) return false;
    return f.u() > 0 && f.u() >= abs(f.v()) && gcd(f.u(), f.v()) == 1;
}

/// Reduces a binary form to u >= |v| >= 1, gcd(u, v) = 1, u > 0.
inline NormalizationTrace normalize_form(const LinearForm& f) {
    f.require_binary("normalize_form");
    NormalizationTrace trace{f, f, {}};
    Int u = f.u(), v = f.v();
    const Int g = gcd(u, v);
    if (g != 1) {
        u /= g;
        v /= g;
        trace.steps.push_back(NormalizationStep::divide_by_gcd);
    }
    if (abs(u) < abs(v)) {
        std::swap(u, v);
        trace.steps.push_back(NormalizationStep::swap);
    }
    if (u < 0) {
        u = -u;
        v = -v;
        trace.steps.push_back(NormalizationStep::negate);
    }
    trace.normalized = LinearForm::binary(u, v);
    return trace;
}

}  // namespace linform
