#pragma once

#include <functional>
#include <string>
#include <vector>

#include "grf/field.hpp"

namespace grf {

// Named verification suites over one configuration, and the claims they
// emit. Every claim id is listed in the registry with a one-line statement of
// what it checks; docs/claims.md mirrors the registry.

struct RunConfig {
    int p = 2, d = 1;
    int nmax = 2;
    unsigned seed = 0;
};
// p prime and p^d <= 16; throws ConfigError otherwise.
Field config_field(const RunConfig& c);

// Closed vocabulary. fail and unstable break a run.
enum class ClaimVerdict { Pass, Fail, DimsOnly, Stable, Unstable, Partial };
const char* verdict_text(ClaimVerdict v);
bool breaks_run(ClaimVerdict v);

struct Claim {
    std::string id;
    std::string ref;       // the registry statement for id
    ClaimVerdict verdict = ClaimVerdict::Pass;
    std::string witness;   // first failure, or the recorded measurements
    std::string range;     // the configuration slice the claim covers
    long long checked = 0;
    double wall_time = 0;  // seconds; kept out of deterministic output
};

struct SuiteRun {
    std::string suite;
    std::vector<Claim> claims;  // ordered by id
    bool passed() const;
};

struct ClaimInfo {
    std::string id, statement;
};
const std::vector<ClaimInfo>& claim_registry();
// Throws UnknownSuite for an unregistered id.
const std::string& claim_statement(const std::string& id);

struct SuiteInfo {
    std::string name, description;
    // Largest admissible nmax for a field size q; -1 when q is not supported.
    std::function<int(int q)> budget;
    int min_nmax = 0;
    std::function<std::vector<Claim>(const RunConfig&)> run;
};
const std::vector<SuiteInfo>& suite_registry();

// Throws UnknownSuite, BudgetExceeded (nmax above the budget for q) or
// ConfigError (nmax below the suite minimum).
SuiteRun run_suite(const std::string& name, const RunConfig& c);

// Expands "all" to every suite except the negative control, keeping the
// requested order otherwise and dropping repeats.
std::vector<std::string> expand_suites(const std::vector<std::string>& names);

// Report serializations, schema "grf-report/1" (docs/report-schema.md). Keys
// and claims come in a fixed order; wall_time is written only when timing is
// set, so that equal configurations give byte-identical reports.
std::string report_json(const RunConfig& c, const std::vector<SuiteRun>& runs, bool timing = false);
std::string report_csv(const std::vector<SuiteRun>& runs, bool timing = false);

}  // namespace grf
