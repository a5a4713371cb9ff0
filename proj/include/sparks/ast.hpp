#pragma once

#include "sparks/diagnostics.hpp"

#include <string>
#include <vector>

namespace sparks {

struct decl {
    enum class kind { scalar_bool, scalar_int, array1d, matrix };
    kind k = kind::scalar_bool;
    std::string name;
    long long dim1 = 1; // array extent / matrix rows
    long long dim2 = 1; // matrix cols
    bool is_input = false;
    source_pos pos;
};

// A variable reference or an integer literal.
struct operand {
    enum class kind { var, lit };
    kind k = kind::lit;
    std::string name;
    long long value = 0;
    source_pos pos;

    static operand var(std::string n, source_pos p = {}) { return {kind::var, std::move(n), 0, p}; }
    static operand lit(long long v, source_pos p = {}) { return {kind::lit, "", v, p}; }
    bool is_lit() const { return k == kind::lit; }
};

// One primitive operation: a value, a unary/binary operator application,
// or a single element/row read.
struct simple_expr {
    enum class op {
        value,    // operand a
        bnot,     // !a
        band,     // a and b
        bor,      // a or b
        bxor,     // a xor b
        beq,      // a = b   (bool operands)
        weq,      // a = b   (int operands)
        wne,      // a != b
        wlt,      // a < b
        wadd,     // a + b
        winc,     // inc a
        wdec,     // dec a
        elem1d,   // name[a]      (bool)
        elem2d,   // name[a, b]   (bool)
        row,      // name[[a]]    (int row of a matrix)
    };
    op k = op::value;
    operand a, b;
    std::string array; // for elem1d/elem2d/row
    source_pos pos;
};

// Expressions are either one simple expression or a parenthesized pair of
// simple expressions joined by one binary operator.
struct expr {
    simple_expr first;
    bool compound = false;
    simple_expr::op join = simple_expr::op::band;
    simple_expr second;
    source_pos pos;
};

struct lvalue {
    enum class kind { scalar, elem1d, elem2d, row, whole1d, whole2d };
    kind k = kind::scalar;
    std::string name;
    operand i, j;
    source_pos pos;
};

struct stmt;
using stmt_list = std::vector<stmt>;

struct stmt {
    enum class kind { assign, increment, ifelse, whileloop, forloop, phase, ret };
    kind k = kind::assign;

    lvalue lhs;    // assign
    expr rhs;      // assign
    std::string var; // increment target / for variable / phase name

    expr cond;            // ifelse, whileloop
    stmt_list body;       // ifelse then / loop body / phase body
    stmt_list else_body;  // ifelse
    bool has_else = false;

    simple_expr from, to; // forloop bounds

    long long ret_value = 0; // ret: asserted value of the output bit
    std::string ret_cell;    // ret: output bit name

    std::string label; // loop label used for iteration bound lookup

    source_pos pos;
};

struct sparks_ast {
    std::vector<decl> decls;
    stmt_list stmts;
    bool phased = false; // true when all top level statements are phase blocks
    long long word_size = 1;
};

const decl* find_decl(const sparks_ast& ast, const std::string& name);

} // namespace sparks
