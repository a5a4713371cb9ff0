#include "sparks/interp.hpp"

#include "sparks/diagnostics.hpp"

namespace sparks {

uint64_t read_word(const std::vector<uint8_t>& image, long long base, long long w) {
    uint64_t v = 0;
    for (long long b = 0; b < w; ++b)
        v |= static_cast<uint64_t>(image[static_cast<size_t>(base + b)] & 1) << b;
    return v;
}

void write_word(std::vector<uint8_t>& image, long long base, long long w, uint64_t value) {
    for (long long b = 0; b < w; ++b)
        image[static_cast<size_t>(base + b)] = static_cast<uint8_t>((value >> b) & 1);
}

namespace {

struct machine {
    const asm_program& prog;
    const memory_map& mem;
    std::vector<uint8_t> m;
    long long w;
    uint64_t mask;
    bool halted = false;
    bool faulted = false;
    std::string fault;
    int ret_value = -1;

    machine(const asm_program& p, const memory_map& mm, std::vector<uint8_t> init)
        : prog(p), mem(mm), m(std::move(init)), w(p.word_size),
          mask(w >= 64 ? ~0ULL : (1ULL << w) - 1) {}

    uint8_t bval(const asm_arg& a) const {
        if (a.is_lit())
            return static_cast<uint8_t>(a.value & 1);
        return m[static_cast<size_t>(mem.scalar_cell(a.name))];
    }

    uint64_t wval(const asm_arg& a) const {
        if (a.is_lit())
            return static_cast<uint64_t>(a.value) & mask;
        const region& r = mem.of(a.name);
        if (r.k != decl::kind::scalar_int)
            fail(error_kind::internal, "'" + a.name + "' is not an int register");
        return read_word(m, r.base, w);
    }

    void set_bool(const asm_arg& dest, uint8_t v) {
        m[static_cast<size_t>(mem.scalar_cell(dest.name))] = v & 1;
    }

    void set_word(const asm_arg& dest, uint64_t v) {
        const region& r = mem.of(dest.name);
        if (r.k != decl::kind::scalar_int)
            fail(error_kind::internal, "'" + dest.name + "' is not an int register");
        write_word(m, r.base, w, v & mask);
    }

    bool check_index(const region& r, uint64_t i, uint64_t extent, source_pos pos) {
        if (i < extent)
            return true;
        faulted = true;
        fault = "index " + std::to_string(i) + " outside '" + r.name + "' (extent " +
                std::to_string(extent) + ") at line " + std::to_string(pos.line);
        return false;
    }

    // Executes the line at pc; returns the next pc.
    int step(int pc) {
        const instr& ins = prog.line(pc);
        const auto& a = ins.args;
        switch (ins.op) {
        case opcode::copy: set_bool(a[0], bval(a[1])); break;
        case opcode::bnot: set_bool(a[0], bval(a[1]) ^ 1); break;
        case opcode::band: set_bool(a[0], bval(a[1]) & bval(a[2])); break;
        case opcode::bor: set_bool(a[0], bval(a[1]) | bval(a[2])); break;
        case opcode::bxor: set_bool(a[0], bval(a[1]) ^ bval(a[2])); break;
        case opcode::beq: set_bool(a[0], bval(a[1]) == bval(a[2]) ? 1 : 0); break;
        case opcode::copyw: set_word(a[0], wval(a[1])); break;
        case opcode::eqw: set_bool(a[0], wval(a[1]) == wval(a[2]) ? 1 : 0); break;
        case opcode::ltw: set_bool(a[0], wval(a[1]) < wval(a[2]) ? 1 : 0); break;
        case opcode::addw: set_word(a[0], wval(a[1]) + wval(a[2])); break;
        case opcode::incw: set_word(a[0], wval(a[1]) + 1); break;
        case opcode::decw: set_word(a[0], wval(a[1]) - 1); break;
        case opcode::array_init: {
            const region& r = mem.of(a[0].name);
            for (long long c = 0; c < r.cells; ++c)
                m[static_cast<size_t>(r.base + c)] = static_cast<uint8_t>(a[1].value & 1);
            break;
        }
        case opcode::matrix_init: {
            const region& r = mem.of(a[0].name);
            for (long long c = 0; c < r.cells; ++c)
                m[static_cast<size_t>(r.base + c)] = static_cast<uint8_t>(a[1].value & 1);
            break;
        }
        case opcode::array_ref: {
            const region& r = mem.of(a[1].name);
            if (a.size() == 3) {
                uint64_t i = wval(a[2]);
                if (!check_index(r, i, static_cast<uint64_t>(r.d1), ins.pos))
                    return pc;
                set_bool(a[0], m[static_cast<size_t>(r.base + static_cast<long long>(i))]);
            } else {
                uint64_t i = wval(a[2]), j = wval(a[3]);
                if (!check_index(r, i, static_cast<uint64_t>(r.d1), ins.pos) ||
                    !check_index(r, j, static_cast<uint64_t>(r.d2), ins.pos))
                    return pc;
                set_bool(a[0], m[static_cast<size_t>(r.base + static_cast<long long>(i) * r.d2 +
                                                     static_cast<long long>(j))]);
            }
            break;
        }
        case opcode::row_ref: {
            const region& r = mem.of(a[1].name);
            uint64_t i = wval(a[2]);
            if (!check_index(r, i, static_cast<uint64_t>(r.d1), ins.pos))
                return pc;
            set_word(a[0], read_word(m, r.base + static_cast<long long>(i) * r.d2, w));
            break;
        }
        case opcode::array_set: {
            const region& r = mem.of(a[0].name);
            if (a.size() == 3) {
                uint64_t i = wval(a[1]);
                if (!check_index(r, i, static_cast<uint64_t>(r.d1), ins.pos))
                    return pc;
                m[static_cast<size_t>(r.base + static_cast<long long>(i))] = bval(a[2]);
            } else {
                uint64_t i = wval(a[1]), j = wval(a[2]);
                if (!check_index(r, i, static_cast<uint64_t>(r.d1), ins.pos) ||
                    !check_index(r, j, static_cast<uint64_t>(r.d2), ins.pos))
                    return pc;
                m[static_cast<size_t>(r.base + static_cast<long long>(i) * r.d2 +
                                      static_cast<long long>(j))] = bval(a[3]);
            }
            break;
        }
        case opcode::row_set: {
            const region& r = mem.of(a[0].name);
            uint64_t i = wval(a[1]);
            if (!check_index(r, i, static_cast<uint64_t>(r.d1), ins.pos))
                return pc;
            write_word(m, r.base + static_cast<long long>(i) * r.d2, w, wval(a[2]));
            break;
        }
        case opcode::unless:
            return bval(a[0]) == 0 ? ins.target : pc + 1;
        case opcode::branch_if:
            return bval(a[0]) == 1 ? ins.target : pc + 1;
        case opcode::jump:
            return ins.target;
        case opcode::ret:
            ret_value = static_cast<int>(a[0].value & 1);
            m[static_cast<size_t>(mem.scalar_cell("w"))] = static_cast<uint8_t>(ret_value);
            halted = true;
            return pc;
        }
        return pc + 1;
    }
};

} // namespace

trace run(const asm_program& prog, const memory_map& mem, const instance_assignment& input,
          long long max_steps) {
    machine mach(prog, mem, input.image(mem));
    trace tr;
    tr.mem.push_back(mach.m);
    int pc = 0;
    for (long long t = 1; t <= max_steps; ++t) {
        if (pc < 0 || pc >= prog.line_count()) {
            tr.faulted = true;
            tr.fault = "control fell past the last instruction";
            break;
        }
        int next = mach.step(pc);
        tr.lines.push_back(pc);
        tr.mem.push_back(mach.m);
        if (mach.halted) {
            tr.halted = true;
            tr.w = mach.ret_value;
            break;
        }
        if (mach.faulted) {
            tr.faulted = true;
            tr.fault = mach.fault;
            break;
        }
        pc = next;
    }
    return tr;
}

} // namespace sparks
