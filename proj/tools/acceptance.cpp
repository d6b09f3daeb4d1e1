// One PASS/FAIL line per acceptance criterion. Every criterion is exact: a
// claim passes or it does not, and no count is compared with a tolerance.
//
//   acceptance [--criterion N] [--cli path/to/grf]
//
// Exit status 0 iff every selected criterion passed.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "grf/funcat.hpp"
#include "grf/suites.hpp"

using namespace grf;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& why) {
        if (!cond && ok) {
            ok = false;
            detail = why;
        }
    }
};

RunConfig cfg(int p, int d, int nmax) {
    RunConfig c;
    c.p = p;
    c.d = d;
    c.nmax = nmax;
    return c;
}

std::string where(const RunConfig& c) {
    return "q=" + std::to_string(config_field(c).q()) + " nmax=" + std::to_string(c.nmax);
}

const Claim* find(const SuiteRun& r, const std::string& id) {
    for (const auto& c : r.claims)
        if (c.id == id) return &c;
    return nullptr;
}

// Every claim of the run must be pass or stable; returns the number of checks.
long long all_pass(Outcome& o, const SuiteRun& r, const RunConfig& c) {
    long long n = 0;
    o.require(!r.claims.empty(), r.suite + " emitted no claims");
    for (const auto& cl : r.claims) {
        n += cl.checked;
        bool good = cl.verdict == ClaimVerdict::Pass || cl.verdict == ClaimVerdict::Stable;
        o.require(good, cl.id + " at " + where(c) + " is " + verdict_text(cl.verdict) + ": " + cl.witness);
        o.require(cl.checked > 0, cl.id + " at " + where(c) + " checked nothing");
    }
    return n;
}

Outcome criterion1() {
    Outcome o;
    long long n = 0;
    for (auto c : {cfg(2, 1, 4), cfg(3, 1, 3), cfg(2, 2, 2)}) n += all_pass(o, run_suite("gaussian.counts", c), c);
    o.detail = o.ok ? std::to_string(n) + " exact checks over q = 2, 3, 4" : o.detail;
    return o;
}

Outcome criterion2() {
    Outcome o;
    long long n = 0;
    for (auto c : {cfg(2, 1, 2), cfg(3, 1, 2)}) n += all_pass(o, run_suite("sites.bijections", c), c);
    if (o.ok) o.detail = std::to_string(n) + " bijection and naturality checks over F2 and F3";
    return o;
}

Outcome criterion3() {
    Outcome o;
    auto c = cfg(2, 1, 2);
    auto r = run_suite("funcat.isos", c);
    long long n = all_pass(o, r, c);
    int dims_only = 0;
    for (const auto& cl : r.claims) dims_only += cl.verdict == ClaimVerdict::DimsOnly;
    o.require(dims_only == 0, std::to_string(dims_only) + " dims-only verdicts");
    o.require(r.claims.size() == 10, "expected 10 isomorphism claims, got " + std::to_string(r.claims.size()));
    if (o.ok) o.detail = std::to_string(r.claims.size()) + " isomorphism families, " + std::to_string(n) + " checks, 0 dims-only";
    return o;
}

Outcome criterion4() {
    Outcome o;
    auto c = cfg(2, 1, 2);
    auto r = run_suite("fundops.adjunctions", c);
    long long n = all_pass(o, r, c);
    for (const char* id : {"adjunction.omega_iota", "adjunction.varpi_o", "adjunction.rho_epsilon",
                           "adjunction.xi_sigma", "adjunction.eta_theta", "adjunction.J_N"})
        o.require(find(r, id) != nullptr, std::string(id) + " missing");
    if (o.ok) o.detail = std::to_string(r.claims.size()) + " adjoint pairs, " + std::to_string(n) + " checks";
    return o;
}

Outcome criterion5() {
    Outcome o;
    std::string star;
    for (auto c : {cfg(2, 1, 3), cfg(3, 1, 2)}) {
        auto r = run_suite("grcoalg.all", c);
        all_pass(o, r, c);
        if (c.p == 3)
            if (auto* s = find(r, "grcoalg.product_formula"))
                star = s->witness.empty() ? "product formula agrees over F3" : "F3: " + s->witness;
    }
    if (o.ok) o.detail = star;
    return o;
}

Outcome criterion6() {
    Outcome o;
    auto c = cfg(2, 1, 3);
    auto r = run_suite("funcat.uniserial", c);
    all_pass(o, r, c);
    // the chain length is re-derived here rather than read from the witness
    auto L = subfunctor_lattice(constant(standard_site(config_field(c), SiteKind::Surj, 3)));
    o.require(L.elems.size() == 5 && L.is_chain(config_field(c)),
              "constant functor lattice has " + std::to_string(L.elems.size()) + " elements");
    if (o.ok) o.detail = "5-element chain; reduced k[Gr_{<=1}] indecomposable; direct-sum control decomposes";
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::string lens;
    for (auto c : {cfg(2, 1, 4), cfg(3, 1, 3)}) {
        auto r = run_suite("fundops.monad", c);
        all_pass(o, r, c);
        if (auto* res = find(r, "monad.canonical_resolution")) lens = res->witness;
    }
    if (o.ok) o.detail = "laws, theta sequence, eta tensor; " + lens;
    return o;
}

// Literal: every corpus pair must have Ext^1 zero at both truncations 2 and 3.
Outcome criterion8() {
    Outcome o;
    auto c = cfg(2, 1, 3);
    auto r = run_suite("homology.vanishing", c);
    long long n = 0;
    for (const auto& cl : r.claims) {
        n += cl.checked;
        bool good = cl.verdict == ClaimVerdict::Pass || cl.verdict == ClaimVerdict::Stable;
        o.require(good, cl.id + " is " + verdict_text(cl.verdict) + ": " + cl.witness);
        o.require(cl.checked > 0, cl.id + " checked nothing");
    }
    auto* ctl = find(r, "homology.positive_control");
    o.require(ctl && ctl->verdict == ClaimVerdict::Pass, "positive control did not give Ext^1 >= 1");
    if (o.ok) o.detail = std::to_string(n) + " checks including the nonsplit control";
    return o;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

Outcome criterion9(const std::string& cli) {
    Outcome o;
    auto c = cfg(2, 1, 2);
    c.seed = 7;
    std::vector<SuiteRun> a, b;
    for (const auto& n : expand_suites({"all"})) a.push_back(run_suite(n, c));
    for (const auto& n : expand_suites({"all"})) b.push_back(run_suite(n, c));
    o.require(report_json(c, a) == report_json(c, b), "in-process JSON reports differ");
    o.require(report_csv(a) == report_csv(b), "in-process CSV reports differ");
    std::string how = "in-process";
    if (!cli.empty()) {
        std::string outs[2];
        for (int i = 0; i < 2; ++i) {
            std::string path = "acceptance_report_" + std::to_string(i) + ".json";
            std::string cmd = "\"" + cli + "\" verify --suite all --p 2 --nmax 2 --seed 7 --out " + path + " 2>/dev/null";
            int rc = std::system(cmd.c_str());
            o.require(rc == 0, "grf verify exited with " + std::to_string(rc));
            outs[i] = slurp(path);
            std::remove(path.c_str());
        }
        o.require(!outs[0].empty() && outs[0] == outs[1], "CLI reports differ between runs");
        o.require(outs[0] == report_json(c, a), "CLI report differs from the in-process report");
        how = "CLI and in-process";
    }
    if (o.ok) o.detail = how + " reports byte-identical (" + std::to_string(report_json(c, a).size()) + " bytes)";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    std::string cli;
    app.add_option("--criterion", only, "run one criterion, 1..9")->check(CLI::Range(1, 9));
    app.add_option("--cli", cli, "path to the grf executable for the determinism check");
    CLI11_PARSE(app, argc, argv);

    const char* names[] = {"",
                           "Gaussian counts",
                           "site bijections",
                           "structural isomorphisms",
                           "adjunction triangles",
                           "k[Gr] algebra suite",
                           "uniseriality",
                           "monadic calculus",
                           "vanishing suites",
                           "determinism"};
    bool all_ok = true;
    for (int k = 1; k <= 9; ++k) {
        if (only && k != only) continue;
        Outcome o;
        try {
            switch (k) {
                case 1: o = criterion1(); break;
                case 2: o = criterion2(); break;
                case 3: o = criterion3(); break;
                case 4: o = criterion4(); break;
                case 5: o = criterion5(); break;
                case 6: o = criterion6(); break;
                case 7: o = criterion7(); break;
                case 8: o = criterion8(); break;
                case 9: o = criterion9(cli); break;
            }
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = e.what();
        }
        std::cout << "criterion " << k << " " << (o.ok ? "PASS" : "FAIL") << " " << names[k] << ": " << o.detail
                  << std::endl;
        all_ok = all_ok && o.ok;
    }
    return all_ok ? 0 : 1;
}
