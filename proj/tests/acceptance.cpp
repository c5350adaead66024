// Runs the eight acceptance criteria with default parameters and prints one
// line per criterion.

#include <chrono>
#include <cstdio>
#include <iostream>

#include "hptkit/suite.hpp"

using namespace hptkit;

namespace {

struct Budget {
    const char* name;
    double seconds;
};

double budget_for(const std::string& name) {
    static const Budget budgets[] = {{"structural", 60}, {"identities", 120}};
    for (const auto& b : budgets)
        if (name == b.name) return b.seconds;
    return 0;
}

}  // namespace

int main() {
    SuiteConfig cfg;
    cfg.order = default_order();
    bool all = true;
    for (const auto& name : criterion_names()) {
        const auto start = std::chrono::steady_clock::now();
        const CriterionResult r = run_criterion(name, cfg);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const double budget = budget_for(name);
        const bool in_time = budget == 0 || seconds < budget;
        const bool ok = r.report.passed() && in_time;
        all = all && ok;
        std::printf("criterion %d %s: %s (%.2fs)\n", r.number, r.name.c_str(), ok ? "PASS" : "FAIL", seconds);
        if (!in_time) std::printf("  over the %.0fs budget\n", budget);
        for (const auto& c : r.report.checks())
            if (!c.passed) std::printf("  failed %s: %s\n", c.label.c_str(), c.detail.c_str());
    }
    std::cout << (all ? "all criteria passed" : "some criteria failed") << '\n';
    return all ? 0 : 1;
}
