#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace flmod {

struct CaseResult {
    std::string name;
    bool pass = false;
    std::string detail;  // both sides of the identity, or the failure witness
};

struct Report {
    std::vector<CaseResult> cases;

    void add(std::string name, bool pass, std::string detail = "") {
        cases.push_back({std::move(name), pass, std::move(detail)});
    }
    void merge(const Report& o) { cases.insert(cases.end(), o.cases.begin(), o.cases.end()); }
    bool all_pass() const {
        return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; });
    }
    /* Aggregation is order-independent: reports are sorted by case name. */
    void sort() {
        std::sort(cases.begin(), cases.end(),
                  [](const CaseResult& a, const CaseResult& b) { return a.name < b.name; });
    }
};

}  // namespace flmod
