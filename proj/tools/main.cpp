#include <iostream>
#include <string>
#include <vector>

#include "mfl/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mfl::cli::run(args, std::cout, std::cerr);
}
