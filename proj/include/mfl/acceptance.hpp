#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mfl/loop.hpp"

namespace mfl::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double ms = 0.0;
};

struct Options {
    std::uint64_t seed = kDefaultSeed;
    std::ostream* progress = nullptr;
};

/// Runs the full verification suite (13 criteria) and returns one result per
/// criterion.  Deterministic for a fixed seed.
std::vector<CriterionResult> run_all(const Options& opts = {});

/// Prints one pass/fail line per criterion; returns true iff all passed.
bool print_results(std::ostream& out, const std::vector<CriterionResult>& results);

} // namespace mfl::acceptance
