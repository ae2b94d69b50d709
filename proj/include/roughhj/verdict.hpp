#pragma once

#include <string>
#include <vector>

namespace roughhj {

// One check outcome: pass iff measured satisfies the bound with the declared
// tolerance folded into `bound`.
struct Verdict {
    std::string check;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
    double runtime_s = 0.0;
};

std::string verdict_to_json(const Verdict& v);
std::string manifest_to_json(const std::vector<Verdict>& vs);
// "PASS check measured=... bound=... (1.2s)"
std::string verdict_line(const Verdict& v);

} // namespace roughhj
