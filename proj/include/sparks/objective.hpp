#pragma once

#include "sparks/instance.hpp"
#include "sparks/lpgen.hpp"
#include "sparks/rational.hpp"

#include <map>

namespace sparks {

// Maximization objective: +1 for every one-bit and -1 for every zero-bit of
// the instance image at time 0, a constant equal to the zero-bit count, plus
// d times the output bit at the horizon. A point matching the instance on
// every input bit scores the full input bit total when d = 0.
struct lp_objective {
    std::vector<std::pair<var_ref, long long>> input_terms;
    var_ref output;
    rat d;
    long long constant = 0;
};

lp_objective build_objective(const lp_build_info& info, const instance_assignment& inst,
                             const rat& d);

// Exact objective value of a named assignment; absent variables count as 0.
rat objective_value(const lp_objective& obj, const std::map<std::string, rat>& sol);

} // namespace sparks
