#pragma once

#include "flmod/report.hpp"

#include <string>
#include <vector>

namespace flmod::suites {

/* Named verification suites surfaced by `flmod verify`. Every case is pure;
   reports come back sorted by case name. */
Report suite_pd(long p, int n_max, int window);
Report suite_divisibility(long p, int witt_len, int window);
Report suite_bigwitt(long p, int order);
Report suite_psi_maz(long p, int witt_len, int window);
Report suite_di_matrix(long p, int witt_len, int window);
Report suite_effectivity(long p, int count, unsigned seed);
Report suite_tor1(long p);
Report suite_witt_identities(long p, int witt_len, int iterations, unsigned seed);

std::vector<std::string> suite_names();
/* Dispatch by name ("all" runs every suite with the given parameters). */
Report run_suite(const std::string& name, long p, int witt_len, int window);

/* The acceptance criteria, one report per criterion (1-based). */
Report criterion(int index);
int criterion_count();
std::string criterion_title(int index);

struct SelftestCase {
    int index;
    std::string title;
    bool pass;
    double seconds;
    std::vector<CaseResult> failures;
};
std::vector<SelftestCase> selftest();

}  // namespace flmod::suites
