#pragma once

#include "sparks/asm_program.hpp"
#include "sparks/params.hpp"

#include <vector>

namespace sparks {

struct phase_window {
    std::string name;
    long long start = 1; // first time step the phase can be active
    long long stop = 1;  // last
};

struct step_bounds {
    long long p = 0; // global horizon
    long long total_min = 0;
    long long total_max = 0;
    std::vector<phase_window> windows; // one per phase; a single window when unphased
    std::vector<std::pair<long long, long long>> line_window; // per 0-based line

    long long start_of(int line) const { return line_window[static_cast<size_t>(line)].first; }
    long long stop_of(int line) const { return line_window[static_cast<size_t>(line)].second; }
    bool active_at(int line, long long t) const {
        return t >= start_of(line) && t <= stop_of(line);
    }
};

// Evaluates the compiler's cost tree against iteration bounds and phase
// windows from the environment. While loops need `bound.<label>` keys;
// explicit windows come from `phase.<name>.start` / `phase.<name>.stop`.
// Fails with a bounds error when windows are inconsistent with the horizon
// or when even the shortest run exceeds it.
step_bounds count_steps(const asm_program& prog, const param_env& env);

} // namespace sparks
