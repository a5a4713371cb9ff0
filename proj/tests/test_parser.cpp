#include "doctest.h"

#include "helpers.hpp"

#include "sparks/parser.hpp"

using namespace sparks;
using namespace sparks::test;

namespace {

const std::string small_env = "W = 3\nmaxsteps = 100\n";

sparks_ast parse_with(const std::string& params, const std::string& src) {
    param_env env = parse_params(params);
    return parse_sparks(src, env);
}

sparks_ast parse3(const std::string& src) { return parse_with(small_env, src); }

} // namespace

TEST_CASE("parameter substitution runs before tokenization") {
    param_env env = parse_params("m = 5\nn = 3\nW = 3\nmaxsteps = 10\n");
    CHECK(substitute_params("array p[$m$]", env) == "array p[5]");
    CHECK(substitute_params("for i <- 0, $m-1$ do", env) == "for i <- 0, 4 do");
    CHECK(substitute_params("j = $n-1$ and $2*(m+1)$", env) == "j = 2 and 12");
    CHECK(error_from([&] { substitute_params("x[$n - 5$]", env); }, error_kind::parse)
              .find("negative") != std::string::npos);
    CHECK(!error_from([&] { substitute_params("$q$", env); }, error_kind::parse).empty());
}

TEST_CASE("declarations lay out scalars, arrays, and matrices") {
    sparks_ast ast = parse3("input bool a, b\n"
                            "input array p[5]\n"
                            "input matrix m[3,8]\n"
                            "int i, j\n"
                            "bool g\n"
                            "return w @ 0\n");
    REQUIRE(ast.decls.size() == 7);
    CHECK(ast.decls[0].is_input);
    CHECK(ast.decls[0].k == decl::kind::scalar_bool);
    CHECK(ast.decls[2].k == decl::kind::array1d);
    CHECK(ast.decls[2].dim1 == 5);
    CHECK(ast.decls[3].k == decl::kind::matrix);
    CHECK(ast.decls[3].dim2 == 8);
    CHECK(ast.decls[4].k == decl::kind::scalar_int);
    CHECK_FALSE(ast.decls[4].is_input);
    CHECK(find_decl(ast, "g") != nullptr);
    CHECK(find_decl(ast, "nope") == nullptr);
}

TEST_CASE("extent checks ride on the word size") {
    CHECK(parse3("array a[8]\nreturn w @ 0\n").decls[0].dim1 == 8);
    CHECK(!error_from([] { parse3("array a[9]\nreturn w @ 0\n"); }, error_kind::parse).empty());
    CHECK(!error_from([] { parse3("array a[0]\nreturn w @ 0\n"); }, error_kind::parse).empty());
    CHECK(!error_from([] { parse3("matrix m[3,9]\nreturn w @ 0\n"); }, error_kind::parse)
               .empty());
}

TEST_CASE("the output bit name is reserved and duplicates are rejected") {
    CHECK(error_from([] { parse3("bool w\nreturn w @ 0\n"); }, error_kind::parse)
              .find("w") != std::string::npos);
    CHECK(!error_from([] { parse3("bool a\nint a\nreturn w @ 0\n"); }, error_kind::parse)
               .empty());
}

TEST_CASE("inputs are read only in every lvalue position") {
    auto rejects = [](const std::string& body) {
        std::string src = "input bool g\ninput array p[4]\ninput matrix m[4,3]\nbool h\nint i\n" +
                          body + "\nreturn w @ 0\n";
        std::string msg = error_from([&] { parse3(src); }, error_kind::parse);
        CHECK(msg.find("read-only") != std::string::npos);
    };
    rejects("g <- 1");
    rejects("p[i] <- 1");
    rejects("m[i,i] <- 0");
    rejects("p[*] <- 0");
    rejects("m[*,*] <- 1");
    CHECK(parse3("input bool g\nbool h\nh <- g\nreturn w @ 0\n").stmts.size() == 2);
}

TEST_CASE("statement forms parse into the expected shapes") {
    sparks_ast ast = parse3("int i, k\n"
                            "bool g\n"
                            "array a[4]\n"
                            "matrix m[4,3]\n"
                            "i <- 0\n"
                            "i++\n"
                            "a[i] <- g\n"
                            "m[i,k] <- 1\n"
                            "a[*] <- 0\n"
                            "if g then\n"
                            "  k <- 1\n"
                            "else\n"
                            "  k <- 2\n"
                            "endif\n"
                            "while g do\n"
                            "  g <- 0\n"
                            "done\n"
                            "for i <- 0, 3 do\n"
                            "  k <- i\n"
                            "done\n"
                            "return w @ 1\n");
    const stmt_list& st = ast.stmts;
    REQUIRE(st.size() == 9);
    CHECK(st[0].k == stmt::kind::assign);
    CHECK(st[1].k == stmt::kind::increment);
    CHECK(st[1].var == "i");
    CHECK(st[2].lhs.k == lvalue::kind::elem1d);
    CHECK(st[3].lhs.k == lvalue::kind::elem2d);
    CHECK(st[4].lhs.k == lvalue::kind::whole1d);
    CHECK(st[5].k == stmt::kind::ifelse);
    CHECK(st[5].has_else);
    CHECK(st[6].k == stmt::kind::whileloop);
    CHECK(st[7].k == stmt::kind::forloop);
    CHECK(st[7].var == "i");
    CHECK(st[8].k == stmt::kind::ret);
    CHECK(st[8].ret_value == 1);
}

TEST_CASE("row lvalues and row expressions need matrix columns equal to W") {
    CHECK(parse3("matrix m[4,3]\nint i, k\nm[[i]] <- k\nreturn w @ 0\n").stmts.size() == 2);
    CHECK(parse3("matrix m[4,3]\nint i, k\nk <- m[[i]]\nreturn w @ 0\n").stmts.size() == 2);
    CHECK(!error_from([] { parse3("matrix m[4,2]\nint i, k\nm[[i]] <- k\nreturn w @ 0\n"); },
                      error_kind::parse)
               .empty());
    CHECK(!error_from([] { parse3("matrix m[4,2]\nint i, k\nk <- m[[i]]\nreturn w @ 0\n"); },
                      error_kind::parse)
               .empty());
}

TEST_CASE("whole-region fills take literal bits only") {
    CHECK(!error_from([] { parse3("array a[4]\nbool g\na[*] <- g\nreturn w @ 0\n"); },
                      error_kind::parse)
               .empty());
    CHECK(parse3("matrix m[4,3]\nm[*,*] <- 1\nreturn w @ 0\n").stmts[0].lhs.k ==
          lvalue::kind::whole2d);
}

TEST_CASE("equality operators resolve by operand type") {
    sparks_ast ast = parse3("bool g, h\nint i, k\n"
                            "g <- g = h\n"
                            "g <- i = k\n"
                            "g <- i != k\n"
                            "g <- i < k\n"
                            "i <- i + k\n"
                            "return w @ 0\n");
    CHECK(ast.stmts[0].rhs.first.k == simple_expr::op::beq);
    CHECK(ast.stmts[1].rhs.first.k == simple_expr::op::weq);
    CHECK(ast.stmts[2].rhs.first.k == simple_expr::op::wne);
    CHECK(ast.stmts[3].rhs.first.k == simple_expr::op::wlt);
    CHECK(ast.stmts[4].rhs.first.k == simple_expr::op::wadd);
}

TEST_CASE("compound expressions join two parenthesized simple expressions") {
    sparks_ast ast = parse3("bool g\nint i, k\narray a[4]\n"
                            "g <- (a[i]) or (i = 3)\n"
                            "g <- (i) != (k)\n"
                            "return w @ 0\n");
    CHECK(ast.stmts[0].rhs.compound);
    CHECK(ast.stmts[0].rhs.join == simple_expr::op::bor);
    CHECK(ast.stmts[0].rhs.first.k == simple_expr::op::elem1d);
    CHECK(ast.stmts[1].rhs.compound);
    CHECK(ast.stmts[1].rhs.join == simple_expr::op::wne);
    CHECK(!error_from([] { parse3("bool g\ng <- g and g and g\nreturn w @ 0\n"); },
                      error_kind::parse)
               .empty());
}

TEST_CASE("every path must end in a return") {
    CHECK(!error_from([] { parse3("bool g\ng <- 1\n"); }, error_kind::parse).empty());
    CHECK(!error_from([] {
               parse3("bool g\nif g then\nreturn w @ 1\nendif\n");
           },
                      error_kind::parse)
               .empty());
    CHECK(parse3("bool g\nif g then\nreturn w @ 1\nelse\nreturn w @ 0\nendif\n").stmts.size() ==
          1);
}

TEST_CASE("phase blocks are all or nothing with unique names") {
    sparks_ast ast = parse3("bool g\n"
                            "phase init do\n"
                            "  g <- 1\n"
                            "done\n"
                            "phase main do\n"
                            "  return w @ 0\n"
                            "done\n");
    CHECK(ast.phased);
    REQUIRE(ast.stmts.size() == 2);
    CHECK(ast.stmts[0].var == "init");
    CHECK(!error_from([] {
               parse3("bool g\nphase a do\ng <- 1\ndone\nreturn w @ 0\n");
           },
                      error_kind::parse)
               .empty());
    CHECK(!error_from([] {
               parse3("bool g\nphase a do\ng <- 1\ndone\nphase a do\nreturn w @ 0\ndone\n");
           },
                      error_kind::parse)
               .empty());
    CHECK(!error_from([] {
               parse3("bool g\nphase a do\nphase b do\nreturn w @ 0\ndone\ndone\n");
           },
                      error_kind::parse)
               .empty());
}

TEST_CASE("pretty printing round trips the corpus programs") {
    for (const char* name : {"ms.spk", "mm.spk", "toy_and4.spk", "toy_parity.spk",
                             "toy_mux.spk"}) {
        std::string params = name[0] == 'm' && name[1] == 's'   ? corpus_text("ms5.param")
                             : name[0] == 'm' && name[1] == 'm' ? corpus_text("wt8.param")
                                                                : corpus_text("toy_and4.param");
        param_env env = parse_params(params);
        sparks_ast ast = parse_sparks(corpus_text(name), env);
        std::string once = pretty_print(ast);
        sparks_ast again = parse_sparks(once, env);
        CHECK(pretty_print(again) == once);
    }
}

TEST_CASE("undeclared names and type mismatches are parse errors") {
    CHECK(!error_from([] { parse3("bool g\ng <- q\nreturn w @ 0\n"); }, error_kind::parse)
               .empty());
    CHECK(!error_from([] { parse3("bool g\nint i\ng <- i\nreturn w @ 0\n"); },
                      error_kind::parse)
               .empty());
    CHECK(!error_from([] { parse3("bool g\ng++\nreturn w @ 0\n"); }, error_kind::parse)
               .empty());
    CHECK(!error_from([] { parse3("int i\nbool g\ni <- i + g\nreturn w @ 0\n"); },
                      error_kind::parse)
               .empty());
}
