#include <algorithm>
#include <cstdio>
#include <sstream>

#include "grf/suites.hpp"
#include "json.hpp"

namespace grf {

std::vector<std::string> expand_suites(const std::vector<std::string>& names) {
    std::vector<std::string> out;
    auto push = [&](const std::string& s) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    };
    for (const auto& n : names) {
        if (n != "all") {
            push(n);
            continue;
        }
        for (const auto& s : suite_registry())
            if (s.name.rfind("control.", 0) != 0) push(s.name);
    }
    return out;
}

namespace {

std::string seconds(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", t);
    return buf;
}

}  // namespace

std::string report_json(const RunConfig& c, const std::vector<SuiteRun>& runs, bool timing) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["schema"] = "grf-report/1";
    j["config"] = {{"p", c.p}, {"d", c.d}, {"q", config_field(c).q()}, {"nmax", c.nmax}, {"seed", c.seed}};
    ordered_json suites = ordered_json::array();
    bool all = !runs.empty();
    for (const auto& r : runs) {
        ordered_json claims = ordered_json::array();
        for (const auto& cl : r.claims) {
            ordered_json x;
            x["claim_id"] = cl.id;
            x["paper_ref"] = cl.ref;
            x["verdict"] = verdict_text(cl.verdict);
            x["witness"] = cl.witness;
            x["range"] = cl.range;
            x["checked"] = cl.checked;
            if (timing) x["wall_time"] = seconds(cl.wall_time);
            claims.push_back(std::move(x));
        }
        suites.push_back({{"suite", r.suite}, {"passed", r.passed()}, {"claims", std::move(claims)}});
        all = all && r.passed();
    }
    j["suites"] = std::move(suites);
    j["passed"] = all;
    return j.dump(2) + "\n";
}

std::string report_csv(const std::vector<SuiteRun>& runs, bool timing) {
    auto quote = [](const std::string& s) {
        std::string o = "\"";
        for (char ch : s) o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return o + "\"";
    };
    std::ostringstream out;
    out << "suite,claim_id,verdict,checked,range,witness,paper_ref" << (timing ? ",wall_time" : "") << "\n";
    for (const auto& r : runs)
        for (const auto& cl : r.claims) {
            out << r.suite << "," << cl.id << "," << verdict_text(cl.verdict) << "," << cl.checked << ","
                << quote(cl.range) << "," << quote(cl.witness) << "," << quote(cl.ref);
            if (timing) out << "," << seconds(cl.wall_time);
            out << "\n";
        }
    return out.str();
}

}  // namespace grf
