// Acceptance suite runner: one line per criterion, nonzero exit on failure.

#include <iostream>

#include "mfl/acceptance.hpp"

int main(int argc, char** argv) {
    mfl::acceptance::Options opts;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--seed" && i + 1 < argc) opts.seed = std::stoull(argv[++i]);
    }
    auto results = mfl::acceptance::run_all(opts);
    bool ok = mfl::acceptance::print_results(std::cout, results);
    for (const auto& r : results)
        std::cerr << "criterion " << r.id << ": " << (r.ms / 1000.0) << " s\n";
    return ok ? 0 : 1;
}
