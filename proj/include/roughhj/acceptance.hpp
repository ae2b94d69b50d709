#pragma once

#include "roughhj/verdict.hpp"

#include <functional>
#include <vector>

namespace roughhj {

// Runs the full acceptance battery (every tolerance pinned in code), calling
// on_result after each criterion; returns all verdicts.
std::vector<Verdict> run_acceptance(const std::function<void(const Verdict&)>& on_result = {});

} // namespace roughhj
