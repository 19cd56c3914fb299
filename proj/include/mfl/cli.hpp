#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mfl::cli {

/// Entry point behind the `mfl` binary.  Subcommands: field, paige, loop,
/// algebra, corpus, verify-all.  Exit codes: 0 all checks pass, 1 a check
/// failed, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mfl::cli
