#include "sparks/parser.hpp"

#include "sparks/diagnostics.hpp"
#include "sparks/util.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace sparks {

const decl* find_decl(const sparks_ast& ast, const std::string& name) {
    for (const auto& d : ast.decls)
        if (d.name == name)
            return &d;
    return nullptr;
}

std::string substitute_params(const std::string& text, const param_env& env) {
    std::string out;
    out.reserve(text.size());
    int lineno = 1;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n')
            ++lineno;
        if (c != '$') {
            out += c;
            ++i;
            continue;
        }
        size_t close = text.find('$', i + 1);
        if (close == std::string::npos)
            fail(error_kind::parse, "unterminated $...$ parameter reference", {lineno, 0});
        std::string inner = text.substr(i + 1, close - i - 1);
        long long v = eval_param_expr(inner, env.values, {lineno, 0});
        if (v < 0)
            fail(error_kind::parse, "$...$ reference evaluates to a negative value", {lineno, 0});
        out += std::to_string(v);
        i = close + 1;
    }
    return out;
}

namespace {

struct token {
    enum class kind { ident, number, punct, newline, end };
    kind k = kind::end;
    std::string text;
    long long value = 0;
    source_pos pos;
};

bool is_keyword(const std::string& s) {
    static const char* kw[] = {"input", "bool",  "int",  "array", "matrix", "if",  "then",
                               "else",  "endif", "while", "for",  "do",     "done", "phase",
                               "return", "and",  "or",   "xor",  "not",    "inc", "dec"};
    for (const char* k : kw)
        if (s == k)
            return true;
    return false;
}

std::vector<token> tokenize(const std::string& text) {
    std::vector<token> toks;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](token::kind k, std::string t, long long v = 0) {
        toks.push_back({k, std::move(t), v, {line, col}});
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                ++i;
            continue;
        }
        if (c == '\n') {
            if (!toks.empty() && toks.back().k != token::kind::newline)
                push(token::kind::newline, "\n");
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++col;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            push(token::kind::ident, text.substr(i, j - i));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            long long v = 0;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                if (v > (INT64_MAX - 9) / 10)
                    fail(error_kind::parse, "integer literal too large", {line, col});
                v = v * 10 + (text[j] - '0');
                ++j;
            }
            push(token::kind::number, text.substr(i, j - i), v);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        auto two = [&](const char* p) {
            return i + 1 < text.size() && text[i] == p[0] && text[i + 1] == p[1];
        };
        if (two("<-") || two("++") || two("!=") || two("[[") || two("]]")) {
            push(token::kind::punct, text.substr(i, 2));
            i += 2;
            col += 2;
            continue;
        }
        if (c == ';') {
            if (!toks.empty() && toks.back().k != token::kind::newline)
                push(token::kind::newline, "\n");
            ++i;
            ++col;
            continue;
        }
        static const std::string singles = "[](),@=<+!*";
        if (singles.find(c) != std::string::npos) {
            push(token::kind::punct, std::string(1, c));
            ++i;
            ++col;
            continue;
        }
        fail(error_kind::parse, std::string("unexpected character '") + c + "'", {line, col});
    }
    push(token::kind::end, "");
    return toks;
}

enum class vtype { vbool, vword };

struct parser {
    std::vector<token> toks;
    size_t pos = 0;
    long long word_size;
    sparks_ast ast;

    const token& peek(size_t ahead = 0) const {
        size_t i = pos + ahead;
        return i < toks.size() ? toks[i] : toks.back();
    }
    token next() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }

    [[noreturn]] void bad(const std::string& msg, source_pos p = {}) {
        fail(error_kind::parse, msg, p.line ? p : peek().pos);
    }

    bool at_punct(const std::string& p) const {
        return peek().k == token::kind::punct && peek().text == p;
    }
    bool at_ident(const std::string& s) const {
        return peek().k == token::kind::ident && peek().text == s;
    }
    void expect_punct(const std::string& p) {
        if (!at_punct(p))
            bad("expected '" + p + "'");
        next();
    }
    void expect_ident(const std::string& s) {
        if (!at_ident(s))
            bad("expected '" + s + "'");
        next();
    }
    void skip_newlines() {
        while (peek().k == token::kind::newline)
            next();
    }
    void end_of_stmt() {
        if (peek().k == token::kind::end)
            return;
        if (peek().k != token::kind::newline)
            bad("expected end of statement");
        skip_newlines();
    }

    std::string expect_name() {
        if (peek().k != token::kind::ident || is_keyword(peek().text))
            bad("expected identifier");
        return next().text;
    }

    long long expect_extent() {
        if (peek().k != token::kind::number)
            bad("expected integer extent");
        long long v = next().value;
        if (v < 1)
            bad("extent must be positive");
        if (v > (1LL << word_size))
            bad("extent " + std::to_string(v) + " does not fit the " +
                std::to_string(word_size) + "-bit index range");
        return v;
    }

    const decl* lookup(const std::string& name) const {
        for (const auto& d : ast.decls)
            if (d.name == name)
                return &d;
        return nullptr;
    }

    void declare(decl d) {
        if (d.name == "w")
            bad("'w' is reserved for the output bit", d.pos);
        if (lookup(d.name))
            bad("duplicate declaration of '" + d.name + "'", d.pos);
        ast.decls.push_back(std::move(d));
    }

    // ---- declarations ----

    void parse_decls() {
        skip_newlines();
        for (;;) {
            bool is_input = false;
            if (at_ident("input")) {
                is_input = true;
                next();
            }
            if (at_ident("bool") || at_ident("int")) {
                decl::kind k = peek().text == "bool" ? decl::kind::scalar_bool : decl::kind::scalar_int;
                source_pos p = next().pos;
                for (;;) {
                    decl d;
                    d.k = k;
                    d.is_input = is_input;
                    d.pos = p;
                    d.name = expect_name();
                    declare(std::move(d));
                    if (at_punct(","))
                        next();
                    else
                        break;
                }
                end_of_stmt();
            } else if (at_ident("array") || at_ident("matrix")) {
                bool is_matrix = peek().text == "matrix";
                source_pos p = next().pos;
                decl d;
                d.k = is_matrix ? decl::kind::matrix : decl::kind::array1d;
                d.is_input = is_input;
                d.pos = p;
                d.name = expect_name();
                expect_punct("[");
                d.dim1 = expect_extent();
                if (is_matrix) {
                    expect_punct(",");
                    d.dim2 = expect_extent();
                }
                expect_punct("]");
                declare(std::move(d));
                end_of_stmt();
            } else {
                if (is_input)
                    bad("expected type after 'input'");
                break;
            }
        }
    }

    // ---- expressions ----

    vtype scalar_type(const std::string& name, source_pos p) {
        const decl* d = lookup(name);
        if (!d)
            bad("use of undeclared name '" + name + "'", p);
        if (d->k == decl::kind::scalar_bool)
            return vtype::vbool;
        if (d->k == decl::kind::scalar_int)
            return vtype::vword;
        bad("'" + name + "' is not a scalar", p);
    }

    operand parse_operand() {
        if (peek().k == token::kind::number) {
            token t = next();
            return operand::lit(t.value, t.pos);
        }
        if (peek().k == token::kind::ident && !is_keyword(peek().text)) {
            token t = next();
            return operand::var(t.text, t.pos);
        }
        bad("expected variable or literal");
    }

    void check_operand(const operand& o, vtype want) {
        if (o.is_lit()) {
            long long hi = want == vtype::vbool ? 1 : (1LL << word_size) - 1;
            if (o.value < 0 || o.value > hi)
                bad("literal " + std::to_string(o.value) + " out of range", o.pos);
            return;
        }
        if (scalar_type(o.name, o.pos) != want)
            bad(want == vtype::vbool ? "expected a bool operand" : "expected an int operand", o.pos);
    }

    void check_index(const operand& o) { check_operand(o, vtype::vword); }

    // Element and row reads; returns false when the next tokens are not an
    // indexed access.
    bool try_parse_access(simple_expr& out) {
        if (peek().k != token::kind::ident || is_keyword(peek().text))
            return false;
        if (!(peek(1).k == token::kind::punct && (peek(1).text == "[" || peek(1).text == "[[")))
            return false;
        token nametok = next();
        const decl* d = lookup(nametok.text);
        if (!d)
            bad("use of undeclared name '" + nametok.text + "'", nametok.pos);
        out.pos = nametok.pos;
        out.array = nametok.text;
        if (at_punct("[[")) {
            next();
            if (d->k != decl::kind::matrix)
                bad("row access on non-matrix '" + nametok.text + "'", nametok.pos);
            if (d->dim2 != word_size)
                bad("row access needs " + std::to_string(word_size) + " columns", nametok.pos);
            out.k = simple_expr::op::row;
            out.a = parse_operand();
            check_index(out.a);
            expect_punct("]]");
            return true;
        }
        next(); // '['
        out.a = parse_operand();
        check_index(out.a);
        if (at_punct(",")) {
            next();
            if (d->k != decl::kind::matrix)
                bad("two indices on non-matrix '" + nametok.text + "'", nametok.pos);
            out.k = simple_expr::op::elem2d;
            out.b = parse_operand();
            check_index(out.b);
        } else {
            if (d->k != decl::kind::array1d)
                bad("one index on non-array '" + nametok.text + "'", nametok.pos);
            out.k = simple_expr::op::elem1d;
        }
        expect_punct("]");
        return true;
    }

    vtype simple_type(const simple_expr& e, vtype lit_context) {
        switch (e.k) {
        case simple_expr::op::value:
            return e.a.is_lit() ? lit_context : scalar_type(e.a.name, e.a.pos);
        case simple_expr::op::bnot:
        case simple_expr::op::band:
        case simple_expr::op::bor:
        case simple_expr::op::bxor:
        case simple_expr::op::beq:
        case simple_expr::op::weq:
        case simple_expr::op::wne:
        case simple_expr::op::wlt:
        case simple_expr::op::elem1d:
        case simple_expr::op::elem2d:
            return vtype::vbool;
        case simple_expr::op::wadd:
        case simple_expr::op::winc:
        case simple_expr::op::wdec:
        case simple_expr::op::row:
            return vtype::vword;
        }
        return lit_context;
    }

    simple_expr parse_simple_impl(vtype lit_context, bool enforce) {
        simple_expr e;
        e.pos = peek().pos;

        if (at_punct("!") || at_ident("not")) {
            next();
            e.k = simple_expr::op::bnot;
            e.a = parse_operand();
            check_operand(e.a, vtype::vbool);
        } else if (at_ident("inc") || at_ident("dec")) {
            bool inc = peek().text == "inc";
            next();
            e.k = inc ? simple_expr::op::winc : simple_expr::op::wdec;
            e.a = parse_operand();
            check_operand(e.a, vtype::vword);
        } else if (try_parse_access(e)) {
            // done
        } else {
            e.k = simple_expr::op::value;
            e.a = parse_operand();
            bool have_binop = false;
            simple_expr::op binop{};
            vtype opty{};
            if (at_ident("and") || at_ident("or") || at_ident("xor")) {
                have_binop = true;
                binop = peek().text == "and"  ? simple_expr::op::band
                        : peek().text == "or" ? simple_expr::op::bor
                                              : simple_expr::op::bxor;
                opty = vtype::vbool;
                next();
            } else if (at_punct("=") || at_punct("!=") || at_punct("<") || at_punct("+")) {
                have_binop = true;
                std::string op = next().text;
                // '=' and '!=' work on both types; resolve from the operands.
                vtype lhs_ty = e.a.is_lit() ? lit_context : scalar_type(e.a.name, e.a.pos);
                if (op == "<") {
                    binop = simple_expr::op::wlt;
                    opty = vtype::vword;
                } else if (op == "+") {
                    binop = simple_expr::op::wadd;
                    opty = vtype::vword;
                } else if (op == "=") {
                    opty = lhs_ty;
                    binop = lhs_ty == vtype::vbool ? simple_expr::op::beq : simple_expr::op::weq;
                } else {
                    opty = lhs_ty;
                    binop = lhs_ty == vtype::vbool ? simple_expr::op::bxor : simple_expr::op::wne;
                }
            }
            if (have_binop) {
                e.k = binop;
                check_operand(e.a, opty);
                e.b = parse_operand();
                check_operand(e.b, opty);
            } else {
                check_operand(e.a, lit_context);
            }
        }

        if (enforce && simple_type(e, lit_context) != lit_context)
            bad(lit_context == vtype::vbool ? "expected a bool expression"
                                            : "expected an int expression",
                e.pos);
        return e;
    }

    simple_expr parse_simple(vtype want) { return parse_simple_impl(want, true); }

    // Used where parentheses hide the expected type: guess the literal
    // context from the leading tokens and skip the result check.
    simple_expr parse_simple_any() {
        vtype guess = vtype::vword;
        if (at_punct("!") || at_ident("not"))
            guess = vtype::vbool;
        else if (peek().k == token::kind::ident && !is_keyword(peek().text) &&
                 !(peek(1).k == token::kind::punct &&
                   (peek(1).text == "[" || peek(1).text == "[[")))
            guess = scalar_type(peek().text, peek().pos);
        return parse_simple_impl(guess, false);
    }

    // Result type when it is independent of literal context; nullopt for a
    // bare literal.
    std::optional<vtype> definite_type(const simple_expr& e) {
        if (e.k == simple_expr::op::value && e.a.is_lit())
            return std::nullopt;
        return simple_type(e, vtype::vbool);
    }

    void require_type(const simple_expr& e, vtype want) {
        auto t = definite_type(e);
        if (t && *t != want)
            bad(want == vtype::vbool ? "expected a bool expression" : "expected an int expression",
                e.pos);
        if (!t)
            check_operand(e.a, want);
    }

    expr parse_expr(vtype want) {
        expr e;
        e.pos = peek().pos;
        if (!at_punct("(")) {
            e.first = parse_simple(want);
            return e;
        }
        next();
        e.first = parse_simple_any();
        expect_punct(")");

        std::string op;
        if (at_ident("and") || at_ident("or") || at_ident("xor") || at_punct("+") ||
            at_punct("=") || at_punct("!=") || at_punct("<"))
            op = next().text;
        else {
            require_type(e.first, want);
            return e;
        }

        expect_punct("(");
        e.compound = true;
        vtype result;
        if (op == "and" || op == "or" || op == "xor") {
            e.join = op == "and"  ? simple_expr::op::band
                     : op == "or" ? simple_expr::op::bor
                                  : simple_expr::op::bxor;
            require_type(e.first, vtype::vbool);
            e.second = parse_simple(vtype::vbool);
            result = vtype::vbool;
        } else if (op == "+") {
            e.join = simple_expr::op::wadd;
            require_type(e.first, vtype::vword);
            e.second = parse_simple(vtype::vword);
            result = vtype::vword;
        } else if (op == "<") {
            e.join = simple_expr::op::wlt;
            require_type(e.first, vtype::vword);
            e.second = parse_simple(vtype::vword);
            result = vtype::vbool;
        } else {
            e.second = parse_simple_any();
            auto t1 = definite_type(e.first);
            auto t2 = definite_type(e.second);
            if (t1 && t2 && *t1 != *t2)
                bad("operand type mismatch around '" + op + "'", e.pos);
            vtype t = t1 ? *t1 : (t2 ? *t2 : vtype::vbool);
            require_type(e.first, t);
            require_type(e.second, t);
            if (op == "=")
                e.join = t == vtype::vbool ? simple_expr::op::beq : simple_expr::op::weq;
            else
                e.join = t == vtype::vbool ? simple_expr::op::bxor : simple_expr::op::wne;
            result = vtype::vbool;
        }
        expect_punct(")");
        if (result != want)
            bad(want == vtype::vbool ? "expected a bool expression" : "expected an int expression",
                e.pos);
        return e;
    }

    // ---- statements ----

    stmt_list parse_block(std::initializer_list<const char*> terminators) {
        stmt_list out;
        skip_newlines();
        for (;;) {
            for (const char* t : terminators)
                if (at_ident(t))
                    return out;
            if (peek().k == token::kind::end)
                bad("unexpected end of file inside a block");
            out.push_back(parse_stmt());
            skip_newlines();
        }
    }

    stmt parse_stmt() {
        source_pos p = peek().pos;
        if (at_ident("if"))
            return parse_if();
        if (at_ident("while"))
            return parse_while();
        if (at_ident("for"))
            return parse_for();
        if (at_ident("return"))
            return parse_return();
        if (at_ident("phase"))
            bad("phase blocks cannot nest", p);

        // assignment or increment
        if (peek().k != token::kind::ident || is_keyword(peek().text))
            bad("expected statement");

        if (peek(1).k == token::kind::punct && peek(1).text == "++") {
            stmt s;
            s.k = stmt::kind::increment;
            s.pos = p;
            s.var = expect_name();
            if (scalar_type(s.var, p) != vtype::vword)
                bad("'++' needs an int variable", p);
            next(); // ++
            end_of_stmt();
            return s;
        }

        stmt s;
        s.k = stmt::kind::assign;
        s.pos = p;
        s.lhs = parse_lvalue();
        expect_punct("<-");
        vtype want = lvalue_type(s.lhs);
        if (s.lhs.k == lvalue::kind::whole1d || s.lhs.k == lvalue::kind::whole2d) {
            if (peek().k != token::kind::number || peek().value > 1)
                bad("whole-array assignment needs literal 0 or 1");
            s.rhs.first.k = simple_expr::op::value;
            s.rhs.first.a = operand::lit(next().value, p);
        } else {
            s.rhs = parse_expr(want);
        }
        end_of_stmt();
        return s;
    }

    vtype lvalue_type(const lvalue& lv) {
        switch (lv.k) {
        case lvalue::kind::scalar:
            return scalar_type(lv.name, lv.pos);
        case lvalue::kind::elem1d:
        case lvalue::kind::elem2d:
        case lvalue::kind::whole1d:
        case lvalue::kind::whole2d:
            return vtype::vbool;
        case lvalue::kind::row:
            return vtype::vword;
        }
        return vtype::vbool;
    }

    lvalue parse_lvalue() {
        lvalue lv;
        lv.pos = peek().pos;
        lv.name = expect_name();
        const decl* d = lookup(lv.name);
        if (!d)
            bad("use of undeclared name '" + lv.name + "'", lv.pos);
        if (d->is_input)
            bad("input '" + lv.name + "' is read-only", lv.pos);
        if (at_punct("[[")) {
            next();
            if (d->k != decl::kind::matrix || d->dim2 != word_size)
                bad("row access needs a matrix with " + std::to_string(word_size) + " columns",
                    lv.pos);
            lv.k = lvalue::kind::row;
            lv.i = parse_operand();
            check_index(lv.i);
            expect_punct("]]");
            return lv;
        }
        if (at_punct("[")) {
            next();
            if (at_punct("*")) {
                next();
                if (at_punct(",")) {
                    next();
                    expect_punct("*");
                    if (d->k != decl::kind::matrix)
                        bad("'[*,*]' needs a matrix", lv.pos);
                    lv.k = lvalue::kind::whole2d;
                } else {
                    if (d->k != decl::kind::array1d)
                        bad("'[*]' needs an array", lv.pos);
                    lv.k = lvalue::kind::whole1d;
                }
                expect_punct("]");
                return lv;
            }
            lv.i = parse_operand();
            check_index(lv.i);
            if (at_punct(",")) {
                next();
                if (d->k != decl::kind::matrix)
                    bad("two indices on non-matrix '" + lv.name + "'", lv.pos);
                lv.k = lvalue::kind::elem2d;
                lv.j = parse_operand();
                check_index(lv.j);
            } else {
                if (d->k != decl::kind::array1d)
                    bad("one index on non-array '" + lv.name + "'", lv.pos);
                lv.k = lvalue::kind::elem1d;
            }
            expect_punct("]");
            return lv;
        }
        if (d->k != decl::kind::scalar_bool && d->k != decl::kind::scalar_int)
            bad("'" + lv.name + "' needs an index", lv.pos);
        lv.k = lvalue::kind::scalar;
        return lv;
    }

    stmt parse_if() {
        stmt s;
        s.k = stmt::kind::ifelse;
        s.pos = next().pos; // if
        s.cond = parse_expr(vtype::vbool);
        expect_ident("then");
        s.body = parse_block({"else", "endif"});
        if (at_ident("else")) {
            next();
            s.has_else = true;
            s.else_body = parse_block({"endif"});
        }
        expect_ident("endif");
        end_of_stmt();
        return s;
    }

    stmt parse_while() {
        stmt s;
        s.k = stmt::kind::whileloop;
        s.pos = next().pos;
        s.cond = parse_expr(vtype::vbool);
        expect_ident("do");
        s.body = parse_block({"done"});
        next(); // done
        end_of_stmt();
        return s;
    }

    stmt parse_for() {
        stmt s;
        s.k = stmt::kind::forloop;
        s.pos = next().pos;
        s.var = expect_name();
        if (scalar_type(s.var, s.pos) != vtype::vword)
            bad("for variable must be an int", s.pos);
        expect_punct("<-");
        s.from = parse_simple(vtype::vword);
        expect_punct(",");
        s.to = parse_simple(vtype::vword);
        expect_ident("do");
        s.body = parse_block({"done"});
        next(); // done
        end_of_stmt();
        return s;
    }

    stmt parse_return() {
        stmt s;
        s.k = stmt::kind::ret;
        s.pos = next().pos;
        std::string cell = expect_name();
        if (cell != "w")
            bad("return reports through the output bit 'w'", s.pos);
        s.ret_cell = cell;
        expect_punct("@");
        if (peek().k != token::kind::number || peek().value > 1)
            bad("return value must be 0 or 1");
        s.ret_value = next().value;
        end_of_stmt();
        return s;
    }

    stmt parse_phase() {
        stmt s;
        s.k = stmt::kind::phase;
        s.pos = next().pos;
        s.var = expect_name();
        expect_ident("do");
        s.body = parse_block({"done"});
        next(); // done
        end_of_stmt();
        return s;
    }

    // ---- program ----

    void parse_program() {
        parse_decls();
        skip_newlines();
        bool saw_phase = false;
        bool saw_plain = false;
        while (peek().k != token::kind::end) {
            if (at_ident("phase")) {
                saw_phase = true;
                for (const auto& prev : ast.stmts)
                    if (prev.k == stmt::kind::phase && prev.var == peek(1).text)
                        bad("duplicate phase name '" + peek(1).text + "'");
                ast.stmts.push_back(parse_phase());
            } else {
                saw_plain = true;
                ast.stmts.push_back(parse_stmt());
            }
            skip_newlines();
        }
        if (saw_phase && saw_plain)
            bad("phase blocks must cover the whole program");
        ast.phased = saw_phase;
        if (ast.stmts.empty())
            bad("empty program");
        if (!reaches_return(flattened()))
            bad("not every path ends in a return");
    }

    std::vector<const stmt*> flattened() const {
        std::vector<const stmt*> out;
        for (const auto& s : ast.stmts) {
            if (s.k == stmt::kind::phase)
                for (const auto& inner : s.body)
                    out.push_back(&inner);
            else
                out.push_back(&s);
        }
        return out;
    }

    static bool stmt_reaches_return(const stmt& s) {
        switch (s.k) {
        case stmt::kind::ret:
            return true;
        case stmt::kind::ifelse: {
            if (!s.has_else)
                return false;
            std::vector<const stmt*> a, b;
            for (const auto& x : s.body)
                a.push_back(&x);
            for (const auto& x : s.else_body)
                b.push_back(&x);
            return reaches_return(a) && reaches_return(b);
        }
        case stmt::kind::forloop: {
            // The body runs at least once.
            std::vector<const stmt*> a;
            for (const auto& x : s.body)
                a.push_back(&x);
            return reaches_return(a);
        }
        default:
            return false;
        }
    }

    static bool reaches_return(const std::vector<const stmt*>& seq) {
        for (const stmt* s : seq)
            if (stmt_reaches_return(*s))
                return true;
        return false;
    }
};

// ---- pretty printer ----

std::string operand_str(const operand& o) {
    return o.is_lit() ? std::to_string(o.value) : o.name;
}

std::string simple_str(const simple_expr& e) {
    using op = simple_expr::op;
    switch (e.k) {
    case op::value: return operand_str(e.a);
    case op::bnot: return "!" + operand_str(e.a);
    case op::band: return operand_str(e.a) + " and " + operand_str(e.b);
    case op::bor: return operand_str(e.a) + " or " + operand_str(e.b);
    case op::bxor: return operand_str(e.a) + " xor " + operand_str(e.b);
    case op::beq: return operand_str(e.a) + " = " + operand_str(e.b);
    case op::weq: return operand_str(e.a) + " = " + operand_str(e.b);
    case op::wne: return operand_str(e.a) + " != " + operand_str(e.b);
    case op::wlt: return operand_str(e.a) + " < " + operand_str(e.b);
    case op::wadd: return operand_str(e.a) + " + " + operand_str(e.b);
    case op::winc: return "inc " + operand_str(e.a);
    case op::wdec: return "dec " + operand_str(e.a);
    case op::elem1d: return e.array + "[" + operand_str(e.a) + "]";
    case op::elem2d: return e.array + "[" + operand_str(e.a) + ", " + operand_str(e.b) + "]";
    case op::row: return e.array + "[[" + operand_str(e.a) + "]]";
    }
    return "";
}

std::string expr_str(const expr& e) {
    if (!e.compound)
        return simple_str(e.first);
    std::string join;
    switch (e.join) {
    case simple_expr::op::band: join = "and"; break;
    case simple_expr::op::bor: join = "or"; break;
    case simple_expr::op::bxor: join = "xor"; break;
    case simple_expr::op::wadd: join = "+"; break;
    case simple_expr::op::beq:
    case simple_expr::op::weq: join = "="; break;
    case simple_expr::op::wne: join = "!="; break;
    case simple_expr::op::wlt: join = "<"; break;
    default: join = "?"; break;
    }
    return "(" + simple_str(e.first) + ") " + join + " (" + simple_str(e.second) + ")";
}

std::string lvalue_str(const lvalue& lv) {
    switch (lv.k) {
    case lvalue::kind::scalar: return lv.name;
    case lvalue::kind::elem1d: return lv.name + "[" + operand_str(lv.i) + "]";
    case lvalue::kind::elem2d:
        return lv.name + "[" + operand_str(lv.i) + ", " + operand_str(lv.j) + "]";
    case lvalue::kind::row: return lv.name + "[[" + operand_str(lv.i) + "]]";
    case lvalue::kind::whole1d: return lv.name + "[*]";
    case lvalue::kind::whole2d: return lv.name + "[*,*]";
    }
    return lv.name;
}

void print_stmts(std::ostringstream& out, const stmt_list& stmts, int depth);

void print_stmt(std::ostringstream& out, const stmt& s, int depth) {
    std::string ind(static_cast<size_t>(depth) * 2, ' ');
    switch (s.k) {
    case stmt::kind::assign:
        out << ind << lvalue_str(s.lhs) << " <- " << expr_str(s.rhs) << "\n";
        break;
    case stmt::kind::increment:
        out << ind << s.var << "++\n";
        break;
    case stmt::kind::ifelse:
        out << ind << "if " << expr_str(s.cond) << " then\n";
        print_stmts(out, s.body, depth + 1);
        if (s.has_else) {
            out << ind << "else\n";
            print_stmts(out, s.else_body, depth + 1);
        }
        out << ind << "endif\n";
        break;
    case stmt::kind::whileloop:
        out << ind << "while " << expr_str(s.cond) << " do\n";
        print_stmts(out, s.body, depth + 1);
        out << ind << "done\n";
        break;
    case stmt::kind::forloop:
        out << ind << "for " << s.var << " <- " << simple_str(s.from) << ", " << simple_str(s.to)
            << " do\n";
        print_stmts(out, s.body, depth + 1);
        out << ind << "done\n";
        break;
    case stmt::kind::phase:
        out << ind << "phase " << s.var << " do\n";
        print_stmts(out, s.body, depth + 1);
        out << ind << "done\n";
        break;
    case stmt::kind::ret:
        out << ind << "return w @ " << s.ret_value << "\n";
        break;
    }
}

void print_stmts(std::ostringstream& out, const stmt_list& stmts, int depth) {
    for (const auto& s : stmts)
        print_stmt(out, s, depth);
}

} // namespace

sparks_ast parse_sparks(const std::string& text, const param_env& env) {
    parser p;
    p.word_size = env.word_size();
    p.ast.word_size = p.word_size;
    p.toks = tokenize(substitute_params(text, env));
    p.parse_program();
    return std::move(p.ast);
}

std::string pretty_print(const sparks_ast& ast) {
    std::ostringstream out;
    for (const auto& d : ast.decls) {
        if (d.is_input)
            out << "input ";
        switch (d.k) {
        case decl::kind::scalar_bool: out << "bool " << d.name << "\n"; break;
        case decl::kind::scalar_int: out << "int " << d.name << "\n"; break;
        case decl::kind::array1d: out << "array " << d.name << "[" << d.dim1 << "]\n"; break;
        case decl::kind::matrix:
            out << "matrix " << d.name << "[" << d.dim1 << ", " << d.dim2 << "]\n";
            break;
        }
    }
    out << "\n";
    print_stmts(out, ast.stmts, 0);
    return out.str();
}

} // namespace sparks
