// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include "flmod/suites.hpp"

#include <cstdio>

int main() {
    bool all = true;
    for (const auto& c : flmod::suites::selftest()) {
        all = all && c.pass;
        std::printf("%s  criterion %2d (%6.2fs): %s\n", c.pass ? "PASS" : "FAIL", c.index,
                    c.seconds, c.title.c_str());
        for (const auto& f : c.failures)
            std::printf("      failed: %s  %s\n", f.name.c_str(), f.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES");
    return all ? 0 : 1;
}
