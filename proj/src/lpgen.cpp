#include "sparks/lpgen.hpp"

#include "sparks/diagnostics.hpp"

namespace sparks {

long long lp_build_info::var_total() const {
    long long n = mem.total * (p + 1);
    for (int i = 0; i < prog->line_count(); ++i) {
        long long w = bounds.stop_of(i) - bounds.start_of(i) + 1;
        n += w * (1 + gadgets[static_cast<size_t>(i)].aux_count);
    }
    return n;
}

lp_build_info prepare_lp(const asm_program& prog, const param_env& env) {
    lp_build_info info;
    info.prog = &prog;
    info.mem = layout_memory(prog.decls, prog.word_size);
    info.bounds = count_steps(prog, env);
    info.p = info.bounds.p;

    int n = prog.line_count();
    for (int i = 0; i < n; ++i) {
        const instr& ins = prog.line(i);
        bool falls_through = !opcode_is_control(ins.op) || ins.op == opcode::unless ||
                             ins.op == opcode::branch_if;
        if (falls_through && i + 1 >= n)
            fail(error_kind::bounds, "line " + std::to_string(i + 1) +
                                         " falls through past the last instruction",
                 ins.pos);
        info.gadgets.push_back(make_gadget(ins, info.mem));
    }
    info.writers_of.assign(static_cast<size_t>(info.mem.total), {});
    for (int i = 0; i < n; ++i)
        for (long long c : info.gadgets[static_cast<size_t>(i)].write_cells)
            info.writers_of[static_cast<size_t>(c)].push_back(i);

    if (!info.bounds.active_at(0, 1))
        fail(error_kind::internal, "first line inactive at the first step");
    return info;
}

namespace {

struct emitter {
    const lp_build_info& info;
    const lp_options& opt;
    row_sink& sink;
    const asm_program& prog;
    long long p;

    std::string rname;
    std::vector<std::pair<var_ref, long long>> terms;

    emitter(const lp_build_info& i, const lp_options& o, row_sink& s)
        : info(i), opt(o), sink(s), prog(*i.prog), p(i.p) {
        terms.reserve(64);
    }

    void add(var_ref v, long long coef) { terms.emplace_back(v, coef); }

    // Control flags outside their line's window are identically zero and
    // their terms are simply dropped.
    void add_step(int line, long long t, long long coef) {
        if (t <= p && info.bounds.active_at(line, t))
            terms.emplace_back(var_ref::step(line, t), coef);
    }

    void flush(sense s, long long rhs) {
        lp_row r;
        r.name = rname;
        r.s = s;
        r.rhs = rhs;
        r.terms = terms.data();
        r.nterms = terms.size();
        sink.row(r);
        terms.clear();
    }

    void start_pin() {
        rname = "start";
        add(var_ref::step(0, 1), 1);
        flush(sense::eq, 1);
    }

    void zero_pins() {
        for (const region& r : info.mem.regions) {
            if (r.is_input)
                continue;
            for (long long c = r.base; c < r.base + r.cells; ++c) {
                rname = "z_" + std::to_string(c);
                add(var_ref::mem(c, 0), 1);
                flush(sense::eq, 0);
            }
        }
    }

    void input_fixes() {
        if (!opt.fix_inputs)
            return;
        auto cells = opt.fix_inputs->input_cells(info.mem);
        auto bits = opt.fix_inputs->input_bits(info.mem);
        for (size_t j = 0; j < cells.size(); ++j) {
            rname = "f_" + std::to_string(cells[j]);
            add(var_ref::mem(cells[j], 0), 1);
            flush(sense::eq, bits[j]);
        }
    }

    void step_sum(long long t) {
        rname = "s_" + std::to_string(t);
        for (int i = 0; i < prog.line_count(); ++i)
            add_step(i, t, 1);
        flush(sense::eq, 1);
    }

    void gadget_rows(int i, long long t) {
        const gadget& g = info.gadgets[static_cast<size_t>(i)];
        std::string prefix = "g_" + std::to_string(i + 1) + "_" + std::to_string(t) + "_";
        for (size_t k = 0; k < g.rows.size(); ++k) {
            rname = prefix + std::to_string(k);
            for (const auto& tm : g.rows[k].terms) {
                switch (tm.s) {
                case gadget::term::slot::control:
                    add(var_ref::step(i, t), tm.coef);
                    break;
                case gadget::term::slot::read:
                    add(var_ref::mem(g.read_cells[static_cast<size_t>(tm.idx)], t - 1), tm.coef);
                    break;
                case gadget::term::slot::write:
                    add(var_ref::mem(g.write_cells[static_cast<size_t>(tm.idx)], t), tm.coef);
                    break;
                case gadget::term::slot::aux:
                    add(var_ref::auxiliary(i, t, tm.idx), tm.coef);
                    break;
                }
            }
            flush(sense::le, g.rows[k].rhs);
        }
    }

    void successor_rows(int i, long long t) {
        const instr& ins = prog.line(i);
        std::string prefix = "c_" + std::to_string(i + 1) + "_" + std::to_string(t) + "_";
        switch (ins.op) {
        case opcode::ret:
            if (t == p)
                return; // the final step may rest here
            rname = prefix + "0";
            add(var_ref::step(i, t), 1);
            add_step(i, t + 1, -1);
            flush(sense::le, 0);
            return;
        case opcode::jump:
            rname = prefix + "0";
            add(var_ref::step(i, t), 1);
            add_step(ins.target, t + 1, -1);
            flush(sense::le, 0);
            return;
        case opcode::unless: {
            long long g = info.mem.scalar_cell(ins.args[0].name);
            rname = prefix + "0"; // guard down: jump
            add(var_ref::step(i, t), 1);
            add(var_ref::mem(g, t), -1);
            add_step(ins.target, t + 1, -1);
            flush(sense::le, 0);
            rname = prefix + "1"; // guard up: fall through
            add(var_ref::step(i, t), 1);
            add(var_ref::mem(g, t), 1);
            add_step(i + 1, t + 1, -1);
            flush(sense::le, 1);
            return;
        }
        case opcode::branch_if: {
            long long g = info.mem.scalar_cell(ins.args[0].name);
            rname = prefix + "0"; // guard up: jump
            add(var_ref::step(i, t), 1);
            add(var_ref::mem(g, t), 1);
            add_step(ins.target, t + 1, -1);
            flush(sense::le, 1);
            rname = prefix + "1"; // guard down: fall through
            add(var_ref::step(i, t), 1);
            add(var_ref::mem(g, t), -1);
            add_step(i + 1, t + 1, -1);
            flush(sense::le, 0);
            return;
        }
        default:
            rname = prefix + "0";
            add(var_ref::step(i, t), 1);
            add_step(i + 1, t + 1, -1);
            flush(sense::le, 0);
            return;
        }
    }

    void inertia_rows(long long t) {
        for (long long c = 0; c < info.mem.total; ++c) {
            const auto& writers = info.writers_of[static_cast<size_t>(c)];
            for (int dir = 0; dir < 2; ++dir) {
                rname = "n_" + std::to_string(c) + "_" + std::to_string(t) + "_" +
                        std::to_string(dir);
                long long sign = dir == 0 ? 1 : -1;
                add(var_ref::mem(c, t), sign);
                add(var_ref::mem(c, t - 1), -sign);
                for (int j : writers)
                    add_step(j, t, -1);
                flush(sense::le, 0);
            }
        }
    }

    void run() {
        start_pin();
        zero_pins();
        input_fixes();
        for (long long t = 1; t <= p; ++t) {
            step_sum(t);
            for (int i = 0; i < prog.line_count(); ++i) {
                if (!info.bounds.active_at(i, t))
                    continue;
                gadget_rows(i, t);
                successor_rows(i, t);
            }
            inertia_rows(t);
        }
    }
};

} // namespace

void emit_lp_rows(const lp_build_info& info, const lp_options& opt, row_sink& sink) {
    emitter(info, opt, sink).run();
}

std::vector<var_ref> enumerate_vars(const lp_build_info& info) {
    std::vector<var_ref> out;
    out.reserve(static_cast<size_t>(info.var_total()));
    for (long long c = 0; c < info.mem.total; ++c)
        out.push_back(var_ref::mem(c, 0));
    for (long long t = 1; t <= info.p; ++t) {
        for (int i = 0; i < info.prog->line_count(); ++i) {
            if (!info.bounds.active_at(i, t))
                continue;
            out.push_back(var_ref::step(i, t));
            for (int k = 0; k < info.gadgets[static_cast<size_t>(i)].aux_count; ++k)
                out.push_back(var_ref::auxiliary(i, t, k));
        }
        for (long long c = 0; c < info.mem.total; ++c)
            out.push_back(var_ref::mem(c, t));
    }
    return out;
}

namespace {

struct model_sink : row_sink {
    lp_model& m;
    explicit model_sink(lp_model& model) : m(model) {}
    void row(const lp_row& r) override {
        lp_model::mrow mr;
        mr.name = std::string(r.name);
        mr.s = r.s;
        mr.rhs = r.rhs;
        mr.terms.reserve(r.nterms);
        for (size_t j = 0; j < r.nterms; ++j)
            mr.terms.emplace_back(m.var_id(r.terms[j].first), r.terms[j].second);
        m.rows.push_back(std::move(mr));
    }
};

} // namespace

lp_model materialize_lp(const lp_build_info& info, const lp_options& opt) {
    lp_model m;
    m.p = info.p;
    for (const var_ref& v : enumerate_vars(info))
        m.add_var(v);
    model_sink sink(m);
    emit_lp_rows(info, opt, sink);
    return m;
}

} // namespace sparks
