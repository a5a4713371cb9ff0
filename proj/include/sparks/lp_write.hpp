#pragma once

#include <iosfwd>

#include "sparks/lpgen.hpp"
#include "sparks/objective.hpp"

namespace sparks {

struct lp_stats {
    long long rows = 0;
    long long cols = 0;
    long long nonzeros = 0;
};

// Streams the model in CPLEX LP text format without materializing it.
// Every variable gets an explicit 0..1 box in the Bounds section.
lp_stats write_lp_text(std::ostream& os, const lp_build_info& info,
                       const lp_options& opt, const lp_objective& obj);

// Sidecar mapping each LP variable name to what it stands for.
void write_names(std::ostream& os, const lp_build_info& info);

// Fixed-format MPS with OBJSENSE MAX; materializes the model to emit
// column-major COLUMNS.
lp_stats write_mps(std::ostream& os, const lp_build_info& info,
                   const lp_options& opt, const lp_objective& obj);

} // namespace sparks
