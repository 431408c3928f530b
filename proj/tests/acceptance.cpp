// One line per acceptance criterion. Runtime budgets live in reproduction_checks().

#include <cstdio>

#include "linform/reproduction.hpp"

int main() {
    linform::CheckOptions opt;
    int failed = 0;
    for (const auto& c : linform::reproduction_checks()) {
        const auto r = linform::run_check(c, opt);
        std::printf("[%s] criterion %2d (%s, %s): %.3fs of %.3fs budget; %s%s\n", r.passed() ? "PASS" : "FAIL",
                    r.criterion, r.key.c_str(), r.name.c_str(), r.seconds, r.budget_seconds, r.detail.c_str(),
                    r.ok && !r.in_budget ? " [over budget]" : "");
        std::fflush(stdout);
        failed += r.passed() ? 0 : 1;
    }
    std::printf("%d of %zu criteria failed\n", failed, linform::reproduction_checks().size());
    return failed == 0 ? 0 : 1;
}
