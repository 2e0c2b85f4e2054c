// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion.  Exit code 0 iff everything passes and
// the whole run stays under the ten-minute budget.

#include <chrono>
#include <cstdio>

#include "fiolab/lab/selftest.hpp"

int main() {
    const auto start = std::chrono::steady_clock::now();
    const auto results = fiolab::run_acceptance_suite();
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] criterion %2d: %s  (%s; %.2f s)\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        all = all && r.pass;
    }
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = total < 600.0;
    std::printf("[%s] criterion 11: full suite under 10 minutes  (%.2f s)\n",
                in_budget ? "PASS" : "FAIL", total);
    return (all && in_budget) ? 0 : 1;
}
