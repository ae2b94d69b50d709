#include "roughhj/acceptance.hpp"

#include <doctest.h>

#include <cstdio>

using namespace roughhj;

TEST_CASE("acceptance criteria") {
    auto verdicts = run_acceptance([](const Verdict& v) {
        std::printf("%s\n", verdict_line(v).c_str());
        std::fflush(stdout);
    });
    REQUIRE(verdicts.size() == 15);
    for (const auto& v : verdicts) {
        INFO(v.check);
        CHECK(v.pass);
    }
}
