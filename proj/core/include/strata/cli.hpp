#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strata::cli {

// Runs one subcommand. Exit codes: 0 on success / affirmative verdicts,
// 1 on negative verdicts (not stratifiable, a failing axiom, a witness that
// does not validate, an exhausted search), 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace strata::cli
