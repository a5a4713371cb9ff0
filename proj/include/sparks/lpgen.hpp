#pragma once

#include "sparks/asm_program.hpp"
#include "sparks/bounds.hpp"
#include "sparks/gadgets.hpp"
#include "sparks/instance.hpp"
#include "sparks/layout.hpp"
#include "sparks/lp_model.hpp"
#include "sparks/params.hpp"

#include <vector>

namespace sparks {

// Everything needed to stream the constraint system: one gadget per line,
// the per-line activity windows, and the writer lines of every cell.
struct lp_build_info {
    const asm_program* prog = nullptr;
    memory_map mem;
    step_bounds bounds;
    std::vector<gadget> gadgets;
    std::vector<std::vector<int>> writers_of; // cell -> writing lines
    long long p = 0;

    long long var_total() const;
};

lp_build_info prepare_lp(const asm_program& prog, const param_env& env);

struct lp_options {
    // When set, equality rows pin the time-0 input cells to this assignment.
    const instance_assignment* fix_inputs = nullptr;
};

// Streams all rows in a fixed order: the start pin, the time-0 pins of the
// non-input cells, optional input fixes, then per time step the one-hot
// control row, each active line's gadget and successor rows, and the two
// inertia rows of every cell. Identical inputs produce identical streams.
void emit_lp_rows(const lp_build_info& info, const lp_options& opt, row_sink& sink);

// Canonical variable order: time-0 cells, then per time step the control
// flags and auxiliaries of the active lines followed by the cell layer.
std::vector<var_ref> enumerate_vars(const lp_build_info& info);

lp_model materialize_lp(const lp_build_info& info, const lp_options& opt);

struct row_counter : row_sink {
    long long rows = 0;
    long long terms = 0;
    void row(const lp_row& r) override {
        ++rows;
        terms += static_cast<long long>(r.nterms);
    }
};

} // namespace sparks
