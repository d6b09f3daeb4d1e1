#pragma once

#include <string>
#include <utility>
#include <vector>

namespace grf {

// Outcome of a family of exhaustive checks. Failures break the run; findings
// are measured facts that are recorded without being pass/fail.
struct SuiteReport {
    explicit SuiteReport(std::string n = {}) : name(std::move(n)) {}
    std::string name;
    long long checked = 0;
    std::vector<std::string> failures;
    std::vector<std::string> findings;
    bool ok() const { return failures.empty(); }
    void fail(const std::string& why) { failures.push_back(why); }
    void expect(bool cond, const std::string& why) {
        ++checked;
        if (!cond) fail(why);
    }
};

}  // namespace grf
