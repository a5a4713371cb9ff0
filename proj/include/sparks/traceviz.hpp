#pragma once

#include <iosfwd>
#include <map>

#include "sparks/interp.hpp"
#include "sparks/lpgen.hpp"

namespace sparks {

// One control-flow picture: which line holds the flag at each step, which
// steps look fractional or ambiguous, and where execution halts.
struct viz_trace {
    long long p = 0;
    int lines = 0;
    std::vector<int> line_at;      // 1-based line per step, index t - 1
    std::vector<uint8_t> flagged;  // step had no clean winner
    long long halt_t = 0;          // first step on a return line, 0 if none
    std::vector<phase_window> bands;
};

viz_trace trace_from_interp(const lp_build_info& info, const trace& tr);

// Picks the largest control flag per step; a step is flagged when the
// winner is below 99/100 or a rival exceeds 1/100.
viz_trace trace_from_solution(const lp_build_info& info,
                              const std::map<std::string, rat>& sol);

void render_csv(std::ostream& os, const viz_trace& v);
void render_svg(std::ostream& os, const viz_trace& v);

// Empty when identical; otherwise a short report of differing steps.
std::string diff_traces(const viz_trace& a, const viz_trace& b);

} // namespace sparks
