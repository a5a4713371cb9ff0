#pragma once

#include "sparks/ast.hpp"

#include <map>
#include <string>
#include <vector>

namespace sparks {

enum class opcode {
    // bool data ops
    copy,
    bnot,
    band,
    bor,
    bxor,
    beq,
    // word data ops
    copyw,
    eqw,
    ltw,
    addw,
    incw,
    decw,
    // memory ops
    array_init,
    matrix_init,
    array_set,
    row_set,
    array_ref,
    row_ref,
    // control
    unless,
    branch_if,
    jump,
    ret,
};

const char* opcode_name(opcode op);
bool opcode_is_control(opcode op);

struct asm_arg {
    enum class kind { reg, lit, label };
    kind k = kind::lit;
    std::string name; // reg or label
    long long value = 0;

    static asm_arg reg(std::string n) { return {kind::reg, std::move(n), 0}; }
    static asm_arg lit(long long v) { return {kind::lit, "", v}; }
    static asm_arg label(std::string n) { return {kind::label, std::move(n), 0}; }
    bool is_lit() const { return k == kind::lit; }
};

struct instr {
    std::string label; // empty when the line is unlabeled
    opcode op = opcode::ret;
    std::vector<asm_arg> args;
    int phase = 0;
    int target = -1; // resolved 0-based branch target
    source_pos pos;
};

// Per-construct execution cost, evaluated against iteration bounds from the
// parameter environment by the step analyzer.
struct cost_node {
    enum class kind { fixed, seq, branch, loop };
    kind k = kind::fixed;
    long long fixed = 0;               // fixed lines (also the shared prologue of a branch)
    std::vector<cost_node> children;   // seq: parts; branch: [then, else]; loop: [iter, exit]
    std::string bound_key;             // loop: parameter key giving the max iteration count
    long long iters_min = 0;           // loop: used when bound_key is empty
    long long iters_max = 0;
    long long last_iter_discount = 0;  // loop: lines skipped on the final iteration
};

struct asm_program {
    long long word_size = 1;
    std::vector<decl> decls; // program cells incl. compiler temps and the output bit
    std::vector<instr> lines;
    std::vector<std::string> phases;                 // empty means unphased
    std::vector<std::pair<int, int>> phase_ranges;   // 0-based inclusive line ranges
    std::map<std::string, int> labels;               // label -> 0-based line

    // Analysis metadata produced by the compiler; absent on programs read
    // back from text.
    bool has_cost = false;
    std::vector<cost_node> phase_costs; // one per phase (or one for the whole program)

    const instr& line(int i) const { return lines[static_cast<size_t>(i)]; }
    int line_count() const { return static_cast<int>(lines.size()); }
};

std::string asm_to_text(const asm_program& prog);
asm_program asm_from_text(const std::string& text);

} // namespace sparks
