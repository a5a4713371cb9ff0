#include "sparks/lower.hpp"

#include "sparks/diagnostics.hpp"

#include <set>

namespace sparks {
namespace {

bool is_word_result(simple_expr::op k) {
    switch (k) {
    case simple_expr::op::wadd:
    case simple_expr::op::winc:
    case simple_expr::op::wdec:
    case simple_expr::op::row:
        return true;
    default:
        return false;
    }
}

bool is_access(simple_expr::op k) {
    return k == simple_expr::op::elem1d || k == simple_expr::op::elem2d ||
           k == simple_expr::op::row;
}

cost_node fixed_cost(long long n) {
    cost_node c;
    c.k = cost_node::kind::fixed;
    c.fixed = n;
    return c;
}

cost_node seq_cost(std::vector<cost_node> parts) {
    cost_node c;
    c.k = cost_node::kind::seq;
    c.children = std::move(parts);
    return c;
}

struct lowerer {
    const sparks_ast& ast;
    asm_program prog;
    std::vector<std::string> pending;
    std::map<std::string, std::string> alias;
    std::set<std::string> declared;
    int if_count = 0, while_count = 0, for_count = 0;
    int btemp_cursor = 0, wtemp_cursor = 0;

    explicit lowerer(const sparks_ast& a) : ast(a) {
        prog.word_size = ast.word_size;
        prog.decls = ast.decls;
        for (const auto& d : prog.decls)
            declared.insert(d.name);
        ensure_decl("w", decl::kind::scalar_bool);
    }

    void ensure_decl(const std::string& name, decl::kind k) {
        if (declared.count(name))
            return;
        decl d;
        d.k = k;
        d.name = name;
        prog.decls.push_back(std::move(d));
        declared.insert(name);
    }

    void reset_temps() { btemp_cursor = wtemp_cursor = 0; }

    std::string btemp() {
        std::string n = "_tmp" + std::to_string(btemp_cursor++);
        ensure_decl(n, decl::kind::scalar_bool);
        return n;
    }
    std::string wtemp() {
        std::string n = "_wtmp" + std::to_string(wtemp_cursor++);
        ensure_decl(n, decl::kind::scalar_int);
        return n;
    }
    std::string temp(bool word) { return word ? wtemp() : btemp(); }

    void mark(const std::string& label) { pending.push_back(label); }

    void emit(opcode op, std::vector<asm_arg> args, source_pos pos = {}) {
        instr ins;
        ins.op = op;
        ins.args = std::move(args);
        ins.pos = pos;
        if (!pending.empty()) {
            ins.label = pending.front();
            for (size_t i = 1; i < pending.size(); ++i)
                alias[pending[i]] = pending.front();
            pending.clear();
        }
        prog.lines.push_back(std::move(ins));
    }

    int count() const { return prog.line_count(); }

    static asm_arg arg_of(const operand& o) {
        return o.is_lit() ? asm_arg::lit(o.value) : asm_arg::reg(o.name);
    }

    // ---- expression emission ----

    void emit_simple_into(const std::string& dest, const simple_expr& e) {
        using op = simple_expr::op;
        asm_arg d = asm_arg::reg(dest);
        switch (e.k) {
        case op::value:
            emit(opcode::copy, {d, arg_of(e.a)}, e.pos);
            break;
        case op::bnot:
            emit(opcode::bnot, {d, arg_of(e.a)}, e.pos);
            break;
        case op::band:
            emit(opcode::band, {d, arg_of(e.a), arg_of(e.b)}, e.pos);
            break;
        case op::bor:
            emit(opcode::bor, {d, arg_of(e.a), arg_of(e.b)}, e.pos);
            break;
        case op::bxor:
            emit(opcode::bxor, {d, arg_of(e.a), arg_of(e.b)}, e.pos);
            break;
        case op::beq:
            emit(opcode::beq, {d, arg_of(e.a), arg_of(e.b)}, e.pos);
            break;
        case op::weq:
            emit(opcode::eqw, {d, arg_of(e.a), arg_of(e.b)}, e.pos);
            break;
        case op::wne:
            emit(opcode::eqw, {d, arg_of(e.a), arg_of(e.b)}, e.pos);
            emit(opcode::bnot, {d, d}, e.pos);
            break;
        case op::wlt:
            emit(opcode::ltw, {d, arg_of(e.a), arg_of(e.b)}, e.pos);
            break;
        case op::wadd:
            emit(opcode::addw, {d, arg_of(e.a), arg_of(e.b)}, e.pos);
            break;
        case op::winc:
            emit(opcode::incw, {d, arg_of(e.a)}, e.pos);
            break;
        case op::wdec:
            emit(opcode::decw, {d, arg_of(e.a)}, e.pos);
            break;
        case op::elem1d:
            emit(opcode::array_ref, {d, asm_arg::reg(e.array), arg_of(e.a)}, e.pos);
            break;
        case op::elem2d:
            emit(opcode::array_ref, {d, asm_arg::reg(e.array), arg_of(e.a), arg_of(e.b)}, e.pos);
            break;
        case op::row:
            emit(opcode::row_ref, {d, asm_arg::reg(e.array), arg_of(e.a)}, e.pos);
            break;
        }
    }

    // For word-typed copies the mnemonic differs.
    void emit_move(const std::string& dest, bool word, const asm_arg& src, source_pos pos) {
        emit(word ? opcode::copyw : opcode::copy, {asm_arg::reg(dest), src}, pos);
    }

    // One side of a compound expression: plain values pass through, anything
    // else lands in a temporary.
    asm_arg side_operand(const simple_expr& se) {
        if (se.k == simple_expr::op::value)
            return arg_of(se.a);
        std::string t = temp(is_word_result(se.k));
        emit_simple_into(t, se);
        return asm_arg::reg(t);
    }

    void emit_join_into(const std::string& dest, simple_expr::op join, const asm_arg& a,
                        const asm_arg& b, source_pos pos) {
        asm_arg d = asm_arg::reg(dest);
        switch (join) {
        case simple_expr::op::band: emit(opcode::band, {d, a, b}, pos); break;
        case simple_expr::op::bor: emit(opcode::bor, {d, a, b}, pos); break;
        case simple_expr::op::bxor: emit(opcode::bxor, {d, a, b}, pos); break;
        case simple_expr::op::beq: emit(opcode::beq, {d, a, b}, pos); break;
        case simple_expr::op::weq: emit(opcode::eqw, {d, a, b}, pos); break;
        case simple_expr::op::wlt: emit(opcode::ltw, {d, a, b}, pos); break;
        case simple_expr::op::wadd: emit(opcode::addw, {d, a, b}, pos); break;
        case simple_expr::op::wne:
            emit(opcode::eqw, {d, a, b}, pos);
            emit(opcode::bnot, {d, d}, pos);
            break;
        default:
            fail(error_kind::internal, "bad join operator");
        }
    }

    void emit_compound_into(const std::string& dest, const expr& e) {
        asm_arg a = side_operand(e.first);
        asm_arg b = side_operand(e.second);
        emit_join_into(dest, e.join, a, b, e.pos);
    }

    // Assignment into a named scalar. Element and row reads go through a
    // temporary followed by a move.
    void emit_assign_scalar(const std::string& dest, bool word, const expr& e) {
        if (e.compound) {
            emit_compound_into(dest, e);
            return;
        }
        const simple_expr& se = e.first;
        if (se.k == simple_expr::op::value) {
            emit_move(dest, word, arg_of(se.a), se.pos);
            return;
        }
        if (is_access(se.k)) {
            std::string t = temp(is_word_result(se.k));
            emit_simple_into(t, se);
            emit_move(dest, word, asm_arg::reg(t), se.pos);
            return;
        }
        emit_simple_into(dest, se);
    }

    // Evaluates a bool expression for a branch into a temporary; a bare
    // variable still costs the one guard-set line.
    std::string emit_cond(const expr& e) {
        std::string t = btemp();
        if (!e.compound)
            emit_simple_into(t, e.first);
        else
            emit_compound_into(t, e);
        return t;
    }

    // Expression as a single operand (for stores).
    asm_arg rhs_operand(const expr& e, bool word) {
        if (!e.compound && e.first.k == simple_expr::op::value)
            return arg_of(e.first.a);
        std::string t = temp(word);
        if (e.compound)
            emit_compound_into(t, e);
        else
            emit_simple_into(t, e.first);
        return asm_arg::reg(t);
    }

    // ---- statements ----

    cost_node lower_list(const stmt_list& stmts) {
        std::vector<cost_node> parts;
        parts.reserve(stmts.size());
        for (const auto& s : stmts)
            parts.push_back(lower_stmt(s));
        return seq_cost(std::move(parts));
    }

    cost_node lower_stmt(const stmt& s) {
        switch (s.k) {
        case stmt::kind::assign: return lower_assign(s);
        case stmt::kind::increment: {
            reset_temps();
            emit(opcode::incw, {asm_arg::reg(s.var), asm_arg::reg(s.var)}, s.pos);
            return fixed_cost(1);
        }
        case stmt::kind::ifelse: return lower_if(s);
        case stmt::kind::whileloop: return lower_while(s);
        case stmt::kind::forloop: return lower_for(s);
        case stmt::kind::ret: {
            reset_temps();
            emit(opcode::ret, {asm_arg::lit(s.ret_value)}, s.pos);
            return fixed_cost(1);
        }
        case stmt::kind::phase:
            fail(error_kind::internal, "phase blocks only appear at the top level");
        }
        fail(error_kind::internal, "bad statement kind");
    }

    cost_node lower_assign(const stmt& s) {
        reset_temps();
        int before = count();
        switch (s.lhs.k) {
        case lvalue::kind::scalar: {
            const decl* d = find_decl(ast, s.lhs.name);
            bool word = d && d->k == decl::kind::scalar_int;
            emit_assign_scalar(s.lhs.name, word, s.rhs);
            break;
        }
        case lvalue::kind::elem1d: {
            asm_arg src = rhs_operand(s.rhs, false);
            emit(opcode::array_set, {asm_arg::reg(s.lhs.name), arg_of(s.lhs.i), src}, s.pos);
            break;
        }
        case lvalue::kind::elem2d: {
            asm_arg src = rhs_operand(s.rhs, false);
            emit(opcode::array_set,
                 {asm_arg::reg(s.lhs.name), arg_of(s.lhs.i), arg_of(s.lhs.j), src}, s.pos);
            break;
        }
        case lvalue::kind::row: {
            asm_arg src = rhs_operand(s.rhs, true);
            emit(opcode::row_set, {asm_arg::reg(s.lhs.name), arg_of(s.lhs.i), src}, s.pos);
            break;
        }
        case lvalue::kind::whole1d:
            emit(opcode::array_init,
                 {asm_arg::reg(s.lhs.name), asm_arg::lit(s.rhs.first.a.value)}, s.pos);
            break;
        case lvalue::kind::whole2d:
            emit(opcode::matrix_init,
                 {asm_arg::reg(s.lhs.name), asm_arg::lit(s.rhs.first.a.value)}, s.pos);
            break;
        }
        return fixed_cost(count() - before);
    }

    cost_node lower_if(const stmt& s) {
        int k = if_count++;
        std::string l_else = "if" + std::to_string(k) + "_else";
        std::string l_done = "if" + std::to_string(k) + "_done";

        reset_temps();
        int before = count();
        std::string r = emit_cond(s.cond);
        emit(opcode::unless, {asm_arg::reg(r), asm_arg::label(l_else)}, s.pos);
        long long prologue = count() - before;

        cost_node then_c = lower_list(s.body);
        cost_node node;
        node.k = cost_node::kind::branch;
        node.fixed = prologue;
        if (s.has_else) {
            emit(opcode::jump, {asm_arg::label(l_done)}, s.pos);
            mark(l_else);
            cost_node else_c = lower_list(s.else_body);
            mark(l_done);
            node.children.push_back(seq_cost({std::move(then_c), fixed_cost(1)}));
            node.children.push_back(std::move(else_c));
        } else {
            mark(l_else);
            node.children.push_back(std::move(then_c));
            node.children.push_back(fixed_cost(0));
        }
        return node;
    }

    cost_node lower_while(const stmt& s) {
        int k = while_count++;
        std::string l_top = "while" + std::to_string(k);
        std::string l_done = l_top + "_done";

        mark(l_top);
        reset_temps();
        int c0 = count();
        std::string r = emit_cond(s.cond);
        long long cond_len = count() - c0;
        std::string t = btemp();
        emit(opcode::bnot, {asm_arg::reg(t), asm_arg::reg(r)}, s.pos);
        emit(opcode::branch_if, {asm_arg::reg(t), asm_arg::label(l_done)}, s.pos);
        cost_node body_c = lower_list(s.body);
        emit(opcode::jump, {asm_arg::label(l_top)}, s.pos);
        mark(l_done);

        cost_node node;
        node.k = cost_node::kind::loop;
        node.bound_key = "bound." + l_top;
        node.iters_min = 0;
        node.iters_max = -1; // taken from the environment
        node.children.push_back(
            seq_cost({fixed_cost(cond_len + 2), std::move(body_c), fixed_cost(1)}));
        node.children.push_back(fixed_cost(cond_len + 2));
        return node;
    }

    cost_node lower_for(const stmt& s) {
        int k = for_count++;
        std::string l_top = "for" + std::to_string(k);
        std::string l_done = l_top + "_done";
        std::string stop = "_fs" + std::to_string(k);
        ensure_decl(stop, decl::kind::scalar_int);

        reset_temps();
        int before = count();
        expr from_e;
        from_e.first = s.from;
        expr to_e;
        to_e.first = s.to;
        emit_assign_scalar(s.var, true, from_e);
        emit_assign_scalar(stop, true, to_e);
        long long pre = count() - before;

        mark(l_top);
        cost_node body_c = lower_list(s.body);
        reset_temps();
        std::string t = btemp();
        emit(opcode::eqw, {asm_arg::reg(t), asm_arg::reg(s.var), asm_arg::reg(stop)}, s.pos);
        emit(opcode::branch_if, {asm_arg::reg(t), asm_arg::label(l_done)}, s.pos);
        emit(opcode::incw, {asm_arg::reg(s.var), asm_arg::reg(s.var)}, s.pos);
        emit(opcode::jump, {asm_arg::label(l_top)}, s.pos);
        mark(l_done);

        cost_node loop;
        loop.k = cost_node::kind::loop;
        loop.last_iter_discount = 2; // the final test skips the increment and back jump
        if (s.from.k == simple_expr::op::value && s.from.a.is_lit() &&
            s.to.k == simple_expr::op::value && s.to.a.is_lit()) {
            long long span = 1LL << ast.word_size;
            long long iters = ((s.to.a.value - s.from.a.value) % span + span) % span + 1;
            loop.iters_min = loop.iters_max = iters;
        } else {
            loop.bound_key = "bound." + l_top;
            loop.iters_min = 1;
            loop.iters_max = -1;
        }
        loop.children.push_back(seq_cost({std::move(body_c), fixed_cost(4)}));
        loop.children.push_back(fixed_cost(0));
        return seq_cost({fixed_cost(pre), std::move(loop)});
    }

    // ---- program ----

    void run() {
        if (ast.phased) {
            for (const auto& s : ast.stmts) {
                int start = count();
                prog.phase_costs.push_back(lower_list(s.body));
                prog.phases.push_back(s.var);
                prog.phase_ranges.emplace_back(start, 0);
            }
            // close ranges
            for (size_t i = 0; i < prog.phase_ranges.size(); ++i) {
                int end = i + 1 < prog.phase_ranges.size() ? prog.phase_ranges[i + 1].first - 1
                                                           : count() - 1;
                prog.phase_ranges[i].second = end;
                if (end < prog.phase_ranges[i].first)
                    fail(error_kind::parse, "phase '" + prog.phases[i] + "' lowered to no lines");
            }
        } else {
            prog.phase_costs.push_back(lower_list(ast.stmts));
        }
        prog.has_cost = true;
        finalize();
    }

    void finalize() {
        if (!pending.empty())
            fail(error_kind::parse, "control flow reaches past the last instruction");

        for (size_t i = 0; i < prog.phases.size(); ++i)
            for (int j = prog.phase_ranges[i].first; j <= prog.phase_ranges[i].second; ++j)
                prog.lines[static_cast<size_t>(j)].phase = static_cast<int>(i);

        for (auto& ins : prog.lines) {
            if (!ins.label.empty())
                prog.labels[ins.label] = -1; // filled below
        }
        for (int i = 0; i < prog.line_count(); ++i)
            if (!prog.lines[static_cast<size_t>(i)].label.empty())
                prog.labels[prog.lines[static_cast<size_t>(i)].label] = i;

        for (auto& ins : prog.lines) {
            if (ins.op != opcode::unless && ins.op != opcode::branch_if && ins.op != opcode::jump)
                continue;
            std::string& l = ins.args.back().name;
            auto a = alias.find(l);
            if (a != alias.end())
                l = a->second;
            auto it = prog.labels.find(l);
            if (it == prog.labels.end())
                fail(error_kind::internal, "unresolved label '" + l + "'");
            ins.target = it->second;
        }

        // Jumps stay inside their phase; the only exception is a construct
        // exit label that lands on the first line of the next phase.
        for (const auto& ins : prog.lines) {
            if (ins.target < 0)
                continue;
            int from = ins.phase;
            int to = prog.lines[static_cast<size_t>(ins.target)].phase;
            if (from == to)
                continue;
            bool seam = to == from + 1 &&
                        ins.target == prog.phase_ranges[static_cast<size_t>(to)].first;
            if (!seam)
                fail(error_kind::parse, "jump crosses a phase boundary", ins.pos);
        }
    }
};

} // namespace

asm_program lower(const sparks_ast& ast) {
    lowerer l(ast);
    l.run();
    return std::move(l.prog);
}

} // namespace sparks
