// grf: tables, site census and verification reports.
//
//   grf gaussian  --p 2 --d 1 --nmax 4 [--format json|csv]
//   grf sites     --p 2 --kind gr --nmax 2
//   grf verify    --suite sites.bijections --p 2 --nmax 2 [--seed S] [--out F] [--format json|csv] [--timing]
//   grf agr-table --p 2 --nmax 4 [--format json|csv]
//   grf list [--claims]
//
// Exit codes: 0 pass, 1 a claim failed or was unstable, 2 configuration error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "grf/grcoalg.hpp"
#include "grf/linalg.hpp"
#include "grf/suites.hpp"
#include "json.hpp"

using namespace grf;
using nlohmann::ordered_json;

namespace {

constexpr int kExitFail = 1, kExitConfig = 2;

bool is_config_error(Errc c) {
    switch (c) {
        case Errc::NotPrime:
        case Errc::FieldTooLarge:
        case Errc::BudgetExceeded:
        case Errc::UnknownSuite:
        case Errc::ConfigError:
        case Errc::InsufficientRange:
        case Errc::TruncationExceeded:
        case Errc::KindMismatch:
            return true;
        default:
            return false;
    }
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::ConfigError, "cannot write " + path);
    f << text;
}

template <class V>
std::string join(const V& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(static_cast<long long>(v[i]));
    return s;
}

// Largest n whose subspaces are still enumerated for the cross-check.
int enumeration_bound(int q) { return q == 2 ? 6 : q <= 4 ? 4 : 3; }

std::string cmd_gaussian(const RunConfig& c, const std::string& format) {
    Field F = config_field(c);
    int q = F.q();
    ordered_json rows = ordered_json::array();
    std::ostringstream csv;
    csv << "n,m,value,mod_p,enumerated\n";
    for (int n = 0; n <= c.nmax; ++n) {
        ordered_json vals = ordered_json::array(), mods = ordered_json::array(), en = ordered_json::array();
        for (int m = 0; m <= n; ++m) {
            auto v = gaussian_binomial(q, n, m);
            vals.push_back(v);
            mods.push_back(v % c.p);
            std::string e = "-";
            if (n <= enumeration_bound(q)) {
                auto got = enum_subspaces(F, n, m, n).size();
                if (got != v) throw Error(Errc::HypothesisViolated, "enumeration disagrees with the formula");
                en.push_back(got);
                e = std::to_string(got);
            } else {
                en.push_back(nullptr);
            }
            csv << n << "," << m << "," << v << "," << v % c.p << "," << e << "\n";
        }
        rows.push_back({{"n", n}, {"values", vals}, {"mod_p", mods}, {"enumerated", en}});
    }
    if (format == "csv") return csv.str();
    ordered_json j{{"q", q}, {"p", c.p}, {"rows", rows}};
    return j.dump(2) + "\n";
}

std::string cmd_sites(const RunConfig& c, const std::string& kind) {
    Field F = config_field(c);
    auto s = standard_site(F, kind_from_name(kind), c.nmax);
    ordered_json objs = ordered_json::array();
    for (int x = 0; x < s->num_objects(); ++x) {
        ordered_json row = ordered_json::array();
        for (int y = 0; y < s->num_objects(); ++y) row.push_back(s->hom(x, y).size());
        objs.push_back({{"object", object_text(s->kind, s->objects[x])}, {"hom_sizes", row}});
    }
    ordered_json j{{"kind", kind_name(s->kind)}, {"q", F.q()}, {"nmax", c.nmax},
                   {"objects", s->num_objects()}, {"morphisms", s->num_morphisms()}, {"census", objs}};
    return j.dump(2) + "\n";
}

std::string cmd_agr(const RunConfig& c, const std::string& format) {
    Field F = config_field(c);
    int q = F.q();
    // measured: q = 2 at nmax 5 and q = 5 at nmax 3 take minutes or exhaust memory
    int budget = q == 2 ? 4 : q <= 4 ? 3 : 2;
    if (c.nmax > budget || c.nmax < 1)
        throw Error(Errc::BudgetExceeded, "agr-table over " + F.name() + " allows 1 <= nmax <= " + std::to_string(budget));
    auto A = gr_algebra(F, c.nmax);
    auto star = star_table(A);
    auto taus = tau_powers(A);
    auto boole = boole_table(A);

    if (format == "csv") {
        std::ostringstream o;
        o << "table,key,values\n";
        for (int n = 0; n <= c.nmax; ++n) {
            std::vector<uint64_t> g;
            for (int m = 0; m <= n; ++m) g.push_back(gaussian_binomial(q, n, m));
            o << "gaussian,n=" << n << "," << join(g) << "\n";
        }
        for (int n = 0; n < c.nmax; ++n) {
            auto T = invariant_transition(A, n);
            for (int r = 0; r < T.rows; ++r) {
                std::vector<int> row;
                for (int k = 0; k < T.cols; ++k) row.push_back(T(r, k));
                o << "transition,n=" << n << " row=" << r << "," << join(row) << "\n";
            }
        }
        for (const auto& e : star.entries)
            o << "star,delta_" << e.a << "*delta_" << e.b << "," << join(e.composed)
              << (e.matches() ? "" : " (formula " + join(e.formula) + ")") << "\n";
        for (size_t k = 0; k < taus.size(); ++k) o << "tau,k=" << k << "," << join(taus[k]) << "\n";
        for (size_t n = 0; n < boole.size(); ++n)
            for (size_t i = 0; i < boole[n].size(); ++i)
                for (size_t j = 0; j < boole[n][i].size(); ++j)
                    o << "boole,n=" << n << " s_" << i << "*s_" << j << "," << join(boole[n][i][j]) << "\n";
        return o.str();
    }
    ordered_json j;
    j["q"] = q;
    j["nmax"] = c.nmax;
    ordered_json g = ordered_json::array();
    for (int n = 0; n <= c.nmax; ++n) {
        ordered_json r = ordered_json::array();
        for (int m = 0; m <= n; ++m) r.push_back(gaussian_binomial(q, n, m));
        g.push_back(r);
    }
    j["gaussian"] = g;
    ordered_json tr = ordered_json::array();
    for (int n = 0; n < c.nmax; ++n) {
        auto T = invariant_transition(A, n);
        ordered_json m = ordered_json::array();
        for (int r = 0; r < T.rows; ++r) {
            ordered_json row = ordered_json::array();
            for (int k = 0; k < T.cols; ++k) row.push_back(T(r, k));
            m.push_back(row);
        }
        tr.push_back({{"from", n + 1}, {"to", n}, {"matrix", m}});
    }
    j["transitions"] = tr;
    ordered_json st = ordered_json::array();
    for (const auto& e : star.entries)
        st.push_back({{"a", e.a}, {"b", e.b}, {"composed", e.composed}, {"formula", e.formula},
                      {"discrepancy", !e.matches()}});
    j["star"] = st;
    j["star_formula_holds"] = star.formula_holds;
    j["tau_powers"] = taus;
    j["boole"] = boole;
    return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grassmannian functor categories: tables and verification reports"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string format = "json", out, kind = "gr";
    std::vector<std::string> suites;
    bool timing = false;

    auto field_opts = [&](CLI::App* s) {
        s->add_option("--p", cfg.p, "characteristic")->capture_default_str();
        s->add_option("--d", cfg.d, "degree of the extension, q = p^d <= 16")->capture_default_str();
        s->add_option("--nmax", cfg.nmax, "truncation")->capture_default_str();
        s->add_option("--out", out, "output file (default stdout)");
    };
    auto* gauss = app.add_subcommand("gaussian", "Gaussian binomial table with a mod-p column");
    field_opts(gauss);
    gauss->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    auto* sites = app.add_subcommand("sites", "object and hom-set census of a standard site");
    field_opts(sites);
    sites->add_option("--kind", kind, "e, surj, inj, gr, grtilde, bigr, prod")->capture_default_str();
    auto* verify = app.add_subcommand("verify", "run verification suites and write a report");
    field_opts(verify);
    verify->add_option("--suite", suites, "suite names, or all")->required();
    verify->add_option("--seed", cfg.seed, "seed for sampled sweeps")->capture_default_str();
    verify->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    verify->add_flag("--timing", timing, "include wall_time (reports are then not reproducible)");
    auto* agr = app.add_subcommand("agr-table", "multiplication, tau and Boole tables of k[Gr]");
    field_opts(agr);
    agr->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    auto* list = app.add_subcommand("list", "registered suites and their budgets");
    bool claims_table = false;
    list->add_flag("--claims", claims_table, "print the claim registry as a markdown table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*gauss) emit(cmd_gaussian(cfg, format), out);
        if (*sites) emit(cmd_sites(cfg, kind), out);
        if (*agr) emit(cmd_agr(cfg, format), out);
        if (*list && claims_table) {
            std::cout << "| claim_id | statement |\n|---|---|\n";
            for (const auto& c : claim_registry()) std::cout << "| `" << c.id << "` | " << c.statement << " |\n";
        } else if (*list) {
            for (const auto& s : suite_registry()) {
                std::cout << s.name << "  nmax " << s.min_nmax << "..[q=2: " << s.budget(2) << ", q=3: " << s.budget(3)
                          << ", q=4: " << s.budget(4) << "]  " << s.description << "\n";
            }
        }
        if (*verify) {
            std::vector<SuiteRun> runs;
            auto names = expand_suites(suites);
            // budgets first, so a bad configuration never leaves a half-written report
            for (const auto& n : names) {
                bool known = false;
                for (const auto& s : suite_registry()) {
                    if (s.name != n) continue;
                    known = true;
                    int b = s.budget(config_field(cfg).q());
                    if (b < 0 || cfg.nmax > b) throw Error(Errc::BudgetExceeded, n + " at nmax " + std::to_string(cfg.nmax));
                    if (cfg.nmax < s.min_nmax) throw Error(Errc::ConfigError, n + " needs nmax >= " + std::to_string(s.min_nmax));
                }
                if (!known) throw Error(Errc::UnknownSuite, n);
            }
            bool ok = true;
            for (const auto& n : names) {
                runs.push_back(run_suite(n, cfg));
                ok = ok && runs.back().passed();
                std::cerr << n << ": " << (runs.back().passed() ? "pass" : "FAIL") << "\n";
            }
            emit(format == "csv" ? report_csv(runs, timing) : report_json(cfg, runs, timing), out);
            return ok ? 0 : kExitFail;
        }
    } catch (const Error& e) {
        std::cerr << "grf: " << e.what() << "\n";
        return is_config_error(e.code()) ? kExitConfig : kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "grf: " << e.what() << "\n";
        return kExitFail;
    }
    return 0;
}
