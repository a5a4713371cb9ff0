#pragma once

#include <map>

#include "sparks/lpgen.hpp"
#include "sparks/objective.hpp"

namespace sparks {

struct verify_report {
    long long rows = 0;
    long long violations = 0;
    std::string first_violation;
    long long bound_violations = 0;
    long long nonintegral = 0;
    long long missing = 0;
    rat objective;

    bool feasible() const { return violations == 0 && bound_violations == 0; }
};

// Exact rational feasibility check of a solver's answer. Values within
// 1e-6 of 0 or 1 snap to the bit before the row arithmetic; anything else
// is kept exactly and counted as nonintegral. Variables the solver did not
// report default to 0 and are counted as missing.
verify_report verify_solution(const lp_build_info& info, const lp_options& opt,
                              const lp_objective& obj,
                              const std::map<std::string, rat>& sol);

} // namespace sparks
