#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zfstar::cli {

// Runs one subcommand (parse, eval, check, find, classify, coherent,
// bridge). Human-readable text goes to `out` (or JSON with --json); `err`
// gets diagnostics. Returns the process exit code: 0 for success or a
// positive verdict, 1 for a negative verdict (formula false, axiom failed,
// nothing found, non-cantorian/quantal), 2 for usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace zfstar::cli
