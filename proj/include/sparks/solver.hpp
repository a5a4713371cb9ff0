#pragma once

#include <map>
#include <string>

#include "sparks/rational.hpp"

namespace sparks {

// Runs the user-supplied solver command with {lp} and {sol} substituted,
// under a hard wall-clock limit. Fails with the solver error kind on a
// nonzero exit or timeout, quoting the tail of the captured output.
void invoke_solver(const std::string& cmd_template, const std::string& lp_path,
                   const std::string& sol_path, long long timeout_sec);

// Accepts three habits of solution files: plain `name value` pairs with #
// comments, the glpsol --output activity table, and CPLEX-style XML with
// name=/value= attributes. Values parse as rationals or decimals.
std::map<std::string, rat> parse_solution(const std::string& text);

} // namespace sparks
