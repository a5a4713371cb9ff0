#include "sparks/asm_program.hpp"

#include "sparks/diagnostics.hpp"
#include "sparks/util.hpp"

#include <sstream>

namespace sparks {

namespace {

struct op_info {
    opcode op;
    const char* name;
    bool set_form; // written as `set <dest> <name> <srcs...>`
    int argc;      // total args incl. dest
};

constexpr op_info op_table[] = {
    {opcode::copy, "copy", true, 2},
    {opcode::bnot, "not", true, 2},
    {opcode::band, "and", true, 3},
    {opcode::bor, "or", true, 3},
    {opcode::bxor, "xor", true, 3},
    {opcode::beq, "eq", true, 3},
    {opcode::copyw, "copyw", true, 2},
    {opcode::eqw, "eqw", true, 3},
    {opcode::ltw, "ltw", true, 3},
    {opcode::addw, "addw", true, 3},
    {opcode::incw, "incw", true, 2},
    {opcode::decw, "decw", true, 2},
    {opcode::array_init, "array_init", false, 2},
    {opcode::matrix_init, "matrix_init", false, 2},
    {opcode::array_set, "array_set", false, -1}, // 3 (1d) or 4 (2d)
    {opcode::row_set, "row_set", false, 3},
    {opcode::array_ref, "array_ref", true, -1}, // 3 (1d) or 4 (2d)
    {opcode::row_ref, "row_ref", true, 3},
    {opcode::unless, "unless", false, 2},
    {opcode::branch_if, "if", false, 2},
    {opcode::jump, "goto", false, 1},
    {opcode::ret, "return", false, 1},
};

const op_info& info(opcode op) {
    for (const auto& oi : op_table)
        if (oi.op == op)
            return oi;
    fail(error_kind::internal, "unknown opcode");
}

const op_info* info_by_name(const std::string& name) {
    for (const auto& oi : op_table)
        if (name == oi.name)
            return &oi;
    return nullptr;
}

std::string arg_text(const asm_arg& a) {
    switch (a.k) {
    case asm_arg::kind::reg:
    case asm_arg::kind::label:
        return a.name;
    case asm_arg::kind::lit:
        return std::to_string(a.value);
    }
    return "";
}

} // namespace

const char* opcode_name(opcode op) { return info(op).name; }

bool opcode_is_control(opcode op) {
    return op == opcode::unless || op == opcode::branch_if || op == opcode::jump ||
           op == opcode::ret;
}

std::string asm_to_text(const asm_program& prog) {
    std::ostringstream out;
    out << "word " << prog.word_size << "\n";
    for (const auto& d : prog.decls) {
        out << "decl ";
        if (d.is_input)
            out << "input ";
        switch (d.k) {
        case decl::kind::scalar_bool: out << "bool " << d.name; break;
        case decl::kind::scalar_int: out << "int " << d.name; break;
        case decl::kind::array1d: out << "array " << d.name << " " << d.dim1; break;
        case decl::kind::matrix: out << "matrix " << d.name << " " << d.dim1 << " " << d.dim2; break;
        }
        out << "\n";
    }
    for (size_t k = 0; k < prog.phases.size(); ++k)
        out << "phase " << prog.phases[k] << " " << prog.phase_ranges[k].first + 1 << " "
            << prog.phase_ranges[k].second + 1 << "\n";

    for (const auto& ins : prog.lines) {
        out << (ins.label.empty() ? "." : ins.label);
        const op_info& oi = info(ins.op);
        if (oi.set_form) {
            out << " set " << arg_text(ins.args[0]) << " " << oi.name;
            for (size_t i = 1; i < ins.args.size(); ++i)
                out << " " << arg_text(ins.args[i]);
        } else {
            out << " " << oi.name;
            for (const auto& a : ins.args)
                out << " " << arg_text(a);
        }
        out << "\n";
    }
    return out.str();
}

namespace {

asm_arg parse_arg(const std::string& tok, bool label_ok) {
    long long v;
    if (parse_int(tok, v))
        return asm_arg::lit(v);
    if (!is_ident(tok))
        fail(error_kind::parse, "bad operand '" + tok + "'");
    if (label_ok)
        return asm_arg::label(tok);
    return asm_arg::reg(tok);
}

} // namespace

asm_program asm_from_text(const std::string& text) {
    asm_program prog;
    prog.word_size = 0;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::vector<std::tuple<std::string, long long, long long>> phase_rows;

    while (std::getline(in, raw)) {
        ++lineno;
        source_pos where{lineno, 0};
        std::string_view sv(raw);
        auto hash = sv.find('#');
        if (hash != std::string_view::npos)
            sv = sv.substr(0, hash);
        auto toks = split_ws(sv);
        if (toks.empty())
            continue;

        if (toks[0] == "word") {
            if (toks.size() != 2 || !parse_int(toks[1], prog.word_size) || prog.word_size < 1)
                fail(error_kind::parse, "bad word directive", where);
            continue;
        }
        if (toks[0] == "decl") {
            size_t i = 1;
            decl d;
            if (i < toks.size() && toks[i] == "input") {
                d.is_input = true;
                ++i;
            }
            if (i + 1 >= toks.size())
                fail(error_kind::parse, "bad decl directive", where);
            const std::string& ty = toks[i];
            d.name = toks[i + 1];
            if (!is_ident(d.name))
                fail(error_kind::parse, "bad decl name", where);
            if (ty == "bool" && i + 2 == toks.size()) {
                d.k = decl::kind::scalar_bool;
            } else if (ty == "int" && i + 2 == toks.size()) {
                d.k = decl::kind::scalar_int;
            } else if (ty == "array" && i + 3 == toks.size()) {
                d.k = decl::kind::array1d;
                if (!parse_int(toks[i + 2], d.dim1) || d.dim1 < 1)
                    fail(error_kind::parse, "bad array extent", where);
            } else if (ty == "matrix" && i + 4 == toks.size()) {
                d.k = decl::kind::matrix;
                if (!parse_int(toks[i + 2], d.dim1) || d.dim1 < 1 ||
                    !parse_int(toks[i + 3], d.dim2) || d.dim2 < 1)
                    fail(error_kind::parse, "bad matrix extents", where);
            } else {
                fail(error_kind::parse, "bad decl directive", where);
            }
            d.pos = where;
            prog.decls.push_back(std::move(d));
            continue;
        }
        if (toks[0] == "phase" && toks.size() == 4) {
            long long a, b;
            if (!parse_int(toks[2], a) || !parse_int(toks[3], b) || a < 1 || b < a)
                fail(error_kind::parse, "bad phase directive", where);
            phase_rows.emplace_back(toks[1], a, b);
            continue;
        }

        // instruction line: <label or .> <stmt>
        instr ins;
        ins.pos = where;
        size_t i = 0;
        if (toks[i] != ".") {
            if (!is_ident(toks[i]))
                fail(error_kind::parse, "bad label '" + toks[i] + "'", where);
            ins.label = toks[i];
        }
        ++i;
        if (i >= toks.size())
            fail(error_kind::parse, "missing instruction", where);

        if (toks[i] == "set") {
            ++i;
            if (i + 1 >= toks.size())
                fail(error_kind::parse, "bad set instruction", where);
            std::string dest = toks[i];
            if (!is_ident(dest))
                fail(error_kind::parse, "bad destination '" + dest + "'", where);
            const op_info* oi = info_by_name(toks[i + 1]);
            if (!oi || !oi->set_form)
                fail(error_kind::parse, "unknown operation '" + toks[i + 1] + "'", where);
            ins.op = oi->op;
            ins.args.push_back(asm_arg::reg(dest));
            for (size_t j = i + 2; j < toks.size(); ++j)
                ins.args.push_back(parse_arg(toks[j], false));
            int argc = static_cast<int>(ins.args.size());
            bool ok = oi->argc == argc ||
                      (ins.op == opcode::array_ref && (argc == 3 || argc == 4));
            if (!ok)
                fail(error_kind::parse, "wrong operand count", where);
        } else {
            const op_info* oi = info_by_name(toks[i]);
            if (!oi || oi->set_form)
                fail(error_kind::parse, "unknown instruction '" + toks[i] + "'", where);
            ins.op = oi->op;
            bool label_last = ins.op == opcode::unless || ins.op == opcode::branch_if ||
                              ins.op == opcode::jump;
            for (size_t j = i + 1; j < toks.size(); ++j) {
                bool is_last = j + 1 == toks.size();
                ins.args.push_back(parse_arg(toks[j], label_last && is_last));
            }
            int argc = static_cast<int>(ins.args.size());
            bool ok = oi->argc == argc ||
                      (ins.op == opcode::array_set && (argc == 3 || argc == 4));
            if (!ok)
                fail(error_kind::parse, "wrong operand count", where);
            if (label_last && ins.args.back().k != asm_arg::kind::label)
                fail(error_kind::parse, "branch needs a label target", where);
        }

        if (!ins.label.empty()) {
            if (prog.labels.count(ins.label))
                fail(error_kind::parse, "duplicate label '" + ins.label + "'", where);
            prog.labels[ins.label] = prog.line_count();
        }
        prog.lines.push_back(std::move(ins));
    }

    if (prog.word_size < 1)
        fail(error_kind::parse, "missing word directive");
    if (prog.lines.empty())
        fail(error_kind::parse, "program has no instructions");

    for (auto& [name, a, b] : phase_rows) {
        if (b > prog.line_count())
            fail(error_kind::parse, "phase range exceeds program length");
        prog.phases.push_back(name);
        prog.phase_ranges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    }
    if (!prog.phases.empty()) {
        if (prog.phase_ranges.front().first != 0 ||
            prog.phase_ranges.back().second != prog.line_count() - 1)
            fail(error_kind::parse, "phases must cover all instructions");
        for (size_t k = 1; k < prog.phase_ranges.size(); ++k)
            if (prog.phase_ranges[k].first != prog.phase_ranges[k - 1].second + 1)
                fail(error_kind::parse, "phases must be contiguous");
        for (size_t k = 0; k < prog.phase_ranges.size(); ++k)
            for (int i = prog.phase_ranges[k].first; i <= prog.phase_ranges[k].second; ++i)
                prog.lines[static_cast<size_t>(i)].phase = static_cast<int>(k);
    }

    // resolve branch targets
    for (auto& ins : prog.lines) {
        if (ins.op == opcode::unless || ins.op == opcode::branch_if || ins.op == opcode::jump) {
            const std::string& l = ins.args.back().name;
            auto it = prog.labels.find(l);
            if (it == prog.labels.end())
                fail(error_kind::parse, "unknown label '" + l + "'", ins.pos);
            ins.target = it->second;
        }
    }
    return prog;
}

} // namespace sparks
