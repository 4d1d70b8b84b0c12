#pragma once

#include "dce/propagator.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dce::validation {

// One named sub-check inside an acceptance criterion.
struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;

    [[nodiscard]] bool passed() const;
};

// <n^2> of the field mode by Wick expansion of a~^+ a~ a~^+ a~ over the
// initial two-mode vacuum. Independent of the Gaussian-summary formulas.
double wick_second_moment(const BogoliubovMap& map);

// The acceptance criteria, in order 1..10. Random samples are drawn from a
// fixed seed so runs are reproducible.
std::vector<CriterionResult> run_acceptance_suite(std::uint64_t seed = 20120417);

// One line per criterion plus indented sub-check lines.
std::string format_report(const std::vector<CriterionResult>& results);

}  // namespace dce::validation
