#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "grf/error.hpp"
#include "grf/suites.hpp"
#include "json.hpp"

using namespace grf;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Runs the grf executable with stdout captured and stderr dropped.
Run run_cli(const std::string& args) {
    std::string cmd = std::string("\"") + GRF_CLI + "\" " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<std::string> lines_starting(const std::string& text, const std::string& prefix) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (l.rfind(prefix, 0) == 0) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("gaussian table rows") {
    auto r = run_cli("gaussian --p 2 --nmax 4 --format csv");
    REQUIRE(r.code == 0);
    CHECK(lines_starting(r.out, "4,") == std::vector<std::string>{"4,0,1,1,1", "4,1,15,1,15", "4,2,35,1,35",
                                                                   "4,3,15,1,15", "4,4,1,1,1"});
    auto j = nlohmann::json::parse(run_cli("gaussian --p 3 --nmax 2").out);
    CHECK(j["rows"][2]["values"] == nlohmann::json::array({1, 4, 1}));
    CHECK(j["rows"][2]["mod_p"] == nlohmann::json::array({1, 1, 1}));
    auto z = nlohmann::json::parse(run_cli("gaussian --p 5 --nmax 0").out);
    CHECK(z["rows"].size() == 1);
    CHECK(z["rows"][0]["values"] == nlohmann::json::array({1}));
}

TEST_CASE("agr-table over F2 up to E_4") {
    auto r = run_cli("agr-table --p 2 --nmax 4 --format csv");
    REQUIRE(r.code == 0);
    // tau at n = 1..4
    CHECK(lines_starting(r.out, "tau,k=1,") == std::vector<std::string>{"tau,k=1,0 1 1 1"});
    // delta_0 is the unit for *
    CHECK(lines_starting(r.out, "star,delta_0*delta_2,") == std::vector<std::string>{"star,delta_0*delta_2,0 0 1 0 0"});
    auto j = nlohmann::json::parse(run_cli("agr-table --p 3 --nmax 2").out);
    CHECK(j["star_formula_holds"] == false);
    bool flagged = false;
    for (const auto& e : j["star"]) flagged = flagged || e["discrepancy"] == true;
    CHECK(flagged);
}

TEST_CASE("verify exit codes") {
    CHECK(run_cli("verify --suite sites.bijections --p 2 --nmax 2").code == 0);
    CHECK(run_cli("verify --suite grcoalg.all --p 2 --nmax 3").code == 0);
    CHECK(run_cli("verify --suite control.corrupted --p 2 --nmax 2").code == 1);
    CHECK(run_cli("verify --suite no.such.suite").code == 2);
    CHECK(run_cli("verify --suite funcat.isos --p 2 --nmax 3").code == 2);
    CHECK(run_cli("verify --suite gaussian.counts --p 4").code == 2);
    CHECK(run_cli("verify --suite gaussian.counts --p 2 --d 5").code == 2);
    CHECK(run_cli("sites --kind nonsense").code == 2);
}

TEST_CASE("sites.bijections report at q = 2, nmax = 2") {
    auto r = run_cli("verify --suite sites.bijections --p 2 --nmax 2");
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == "grf-report/1");
    CHECK(j["passed"] == true);
    REQUIRE(j["suites"].size() == 1);
    for (const auto& c : j["suites"][0]["claims"]) {
        CHECK(c["verdict"] == "pass");
        CHECK(c["checked"] > 0);
        CHECK(!c.contains("wall_time"));
    }
    auto t = nlohmann::json::parse(run_cli("verify --suite sites.bijections --p 2 --nmax 2 --timing").out);
    CHECK(t["suites"][0]["claims"][0].contains("wall_time"));
}

TEST_CASE("claims are registered and documented") {
    std::ifstream f(std::string(GRF_SOURCE_DIR) + "/docs/claims.md");
    REQUIRE(f);
    std::stringstream doc;
    doc << f.rdbuf();
    std::set<std::string> ids;
    for (const auto& c : claim_registry()) {
        CHECK_MESSAGE(ids.insert(c.id).second, "duplicate claim id " << c.id);
        CHECK_MESSAGE(doc.str().find("| `" + c.id + "` | " + c.statement + " |") != std::string::npos,
                      c.id << " is missing from docs/claims.md");
    }
    std::set<std::string> emitted;
    RunConfig cfg;
    cfg.nmax = 2;
    auto names = expand_suites({"all", "control.corrupted"});
    CHECK(names.size() == suite_registry().size());
    for (const auto& n : names)
        for (const auto& c : run_suite(n, cfg).claims) {
            CHECK_MESSAGE(ids.count(c.id), c.id << " is emitted but not registered");
            CHECK(c.ref == claim_statement(c.id));
            emitted.insert(c.id);
        }
    CHECK(emitted == ids);
    CHECK_THROWS_AS(claim_statement("nope"), Error);
}

TEST_CASE("budgets and configuration errors") {
    RunConfig c;
    c.nmax = 9;
    CHECK_THROWS_AS(run_suite("sites.bijections", c), Error);
    c.nmax = 2;
    CHECK_THROWS_AS(run_suite("missing", c), Error);
    c.p = 6;
    CHECK_THROWS_AS(run_suite("gaussian.counts", c), Error);
    try {
        c.p = 2;
        c.nmax = 1;
        run_suite("fundops.adjunctions", c);
        FAIL("expected a configuration error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ConfigError);
    }
}

TEST_CASE("reports are byte-identical across runs") {
    RunConfig c;
    c.seed = 11;
    std::vector<SuiteRun> a{run_suite("grcoalg.all", c)}, b{run_suite("grcoalg.all", c)};
    CHECK(report_json(c, a) == report_json(c, b));
    CHECK(report_csv(a) == report_csv(b));
    CHECK(run_cli("verify --suite grcoalg.all --seed 11").out == report_json(c, a));
}
