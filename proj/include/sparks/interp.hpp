#pragma once

#include "sparks/asm_program.hpp"
#include "sparks/instance.hpp"
#include "sparks/layout.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sparks {

struct trace {
    std::vector<int> lines;                // 0-based line executed at step t = index + 1
    std::vector<std::vector<uint8_t>> mem; // mem[t] = memory after t steps; mem[0] initial
    bool halted = false;
    bool faulted = false;
    std::string fault;
    int w = -1; // value asserted by the reached return

    long long steps() const { return static_cast<long long>(lines.size()); }
    const std::vector<uint8_t>& final_mem() const { return mem.back(); }
};

// Deterministic small-step execution. Exactly one line runs per step; the
// modified memory image is snapshotted after every step. Stops on return
// (halted), on an out-of-range index (faulted), or when the budget runs
// out (neither flag set).
trace run(const asm_program& prog, const memory_map& mem, const instance_assignment& input,
          long long max_steps);

// Word helpers shared with the verifier.
uint64_t read_word(const std::vector<uint8_t>& image, long long base, long long w);
void write_word(std::vector<uint8_t>& image, long long base, long long w, uint64_t value);

} // namespace sparks
