#pragma once

#include "sparks/asm_program.hpp"
#include "sparks/layout.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace sparks {

// One data line becomes a gadget: inequalities over the line's control flag,
// the cells it reads (previous time layer), the cells it writes (current
// layer), and per-line auxiliary bits. Every row satisfies the
// box-maximum property when the control flag is 0, so an inactive gadget
// never constrains anything; when the flag is 1 the rows pin the writes and
// auxiliaries to the operation's semantics.
struct gadget {
    struct term {
        enum class slot : uint8_t { control, read, write, aux };
        slot s = slot::control;
        int idx = 0;
        long long coef = 0;
    };
    struct row {
        std::vector<term> terms;
        long long rhs = 0; // sense is always <=
    };

    std::vector<long long> read_cells;  // distinct cells read
    std::vector<long long> write_cells; // distinct cells written
    int aux_count = 0;
    std::vector<row> rows;

    // Semantics: fills writes and auxiliaries from read values.
    std::function<void(const uint8_t* reads, uint8_t* writes, uint8_t* aux)> witness;

    bool empty() const { return rows.empty() && write_cells.empty(); }
};

// Branch lines yield an empty gadget; their behavior lives in the step rows.
// Row counts are linear in the word size and region extents.
gadget make_gadget(const instr& ins, const memory_map& mem);

} // namespace sparks
