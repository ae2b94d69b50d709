#include "roughhj/verdict.hpp"

#include <json.hpp>

#include <cstdio>

namespace roughhj {

namespace {

nlohmann::json to_json_obj(const Verdict& v) {
    return nlohmann::json{{"check", v.check},
                          {"measured", v.measured},
                          {"bound", v.bound},
                          {"pass", v.pass},
                          {"runtime", v.runtime_s}};
}

} // namespace

std::string verdict_to_json(const Verdict& v) { return to_json_obj(v).dump(); }

std::string manifest_to_json(const std::vector<Verdict>& vs) {
    nlohmann::json arr = nlohmann::json::array();
    bool all = true;
    for (const auto& v : vs) {
        arr.push_back(to_json_obj(v));
        all = all && v.pass;
    }
    nlohmann::json root{{"checks", arr}, {"all_pass", all}};
    return root.dump(2);
}

std::string verdict_line(const Verdict& v) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s %-24s measured=%-12.6g bound=%-12.6g (%.1fs)",
                  v.pass ? "PASS" : "FAIL", v.check.c_str(), v.measured, v.bound, v.runtime_s);
    return buf;
}

} // namespace roughhj
