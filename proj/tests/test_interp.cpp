#include "doctest.h"

#include "helpers.hpp"

#include "sparks/interp.hpp"

using namespace sparks;
using namespace sparks::test;

namespace {

long long word_of(const front& f, const std::vector<uint8_t>& img, const std::string& name) {
    return static_cast<long long>(
        read_word(img, f.mem.of(name).base, f.mem.word_size));
}

} // namespace

TEST_CASE("word arithmetic wraps at the word size") {
    front f = make_front("W = 3\nmaxsteps = 30\n",
                         "int a, b, c, d, e\n"
                         "a <- 6\n"
                         "b <- a + 5\n"
                         "c <- inc 7\n"
                         "d <- dec 0\n"
                         "e <- dec a\n"
                         "return w @ 1\n");
    trace tr = run_source(f, "");
    REQUIRE(tr.halted);
    const auto& img = tr.final_mem();
    CHECK(word_of(f, img, "b") == 3);  // 11 mod 8
    CHECK(word_of(f, img, "c") == 0);  // 8 mod 8
    CHECK(word_of(f, img, "d") == 7);  // -1 mod 8
    CHECK(word_of(f, img, "e") == 5);
    CHECK(tr.w == 1);
    CHECK(img[static_cast<size_t>(f.mem.scalar_cell("w"))] == 1);
}

TEST_CASE("comparisons and boolean operators") {
    front f = make_front("W = 3\nmaxsteps = 40\n",
                         "int a, b\n"
                         "bool lt, ge, eq, ne, x, o, n\n"
                         "a <- 3\n"
                         "b <- 5\n"
                         "lt <- a < b\n"
                         "ge <- b < a\n"
                         "eq <- a = a\n"
                         "ne <- a != b\n"
                         "x <- lt xor ge\n"
                         "o <- ge or eq\n"
                         "n <- !lt\n"
                         "return w @ 0\n");
    trace tr = run_source(f, "");
    REQUIRE(tr.halted);
    const auto& img = tr.final_mem();
    auto bit = [&](const char* name) {
        return static_cast<int>(img[static_cast<size_t>(f.mem.scalar_cell(name))]);
    };
    CHECK(bit("lt") == 1);
    CHECK(bit("ge") == 0);
    CHECK(bit("eq") == 1);
    CHECK(bit("ne") == 1);
    CHECK(bit("x") == 1);
    CHECK(bit("o") == 1);
    CHECK(bit("n") == 0);
}

TEST_CASE("memory ops move bits through arrays, matrices, and rows") {
    front f = make_front("W = 3\nmaxsteps = 60\n",
                         "input array p[5]\n"
                         "array q[5]\n"
                         "matrix m[4,3]\n"
                         "int i, k, r\n"
                         "bool g\n"
                         "q[*] <- 1\n"
                         "i <- 2\n"
                         "g <- p[i]\n"
                         "q[i] <- g\n"
                         "k <- 6\n"
                         "m[[1]] <- k\n"
                         "r <- m[[1]]\n"
                         "g <- m[1, 2]\n"
                         "m[3, 0] <- g\n"
                         "return w @ 0\n");
    trace tr = run_source(f, "array p[5] <- {0, 0, 1, 0, 1}\n");
    REQUIRE(tr.halted);
    const auto& img = tr.final_mem();
    CHECK(img[static_cast<size_t>(f.mem.elem1d("q", 2))] == 1);
    CHECK(img[static_cast<size_t>(f.mem.elem1d("q", 0))] == 1);
    CHECK(word_of(f, img, "r") == 6);
    // 6 = 011 little endian: m[1,2] holds the high bit
    CHECK(img[static_cast<size_t>(f.mem.elem2d("m", 1, 2))] == 1);
    CHECK(img[static_cast<size_t>(f.mem.elem2d("m", 1, 0))] == 0);
    CHECK(img[static_cast<size_t>(f.mem.elem2d("m", 3, 0))] == 1);
}

TEST_CASE("an out-of-range index faults the machine") {
    front f = make_front("W = 3\nmaxsteps = 30\n",
                         "array a[5]\nint i\nbool g\n"
                         "i <- 6\n"
                         "g <- a[i]\n"
                         "return w @ 0\n");
    trace tr = run_source(f, "");
    CHECK_FALSE(tr.halted);
    CHECK(tr.faulted);
    CHECK(tr.fault.find("index 6 outside 'a'") != std::string::npos);
    CHECK(tr.steps() == 2);
}

TEST_CASE("running out of budget leaves both flags down") {
    front f = make_front("W = 2\nmaxsteps = 7\nbound.while0 = 100\n",
                         "bool g\ng <- 1\nwhile g do\ng <- g\ndone\nreturn w @ 0\n");
    trace tr = run_source(f, "");
    CHECK_FALSE(tr.halted);
    CHECK_FALSE(tr.faulted);
    CHECK(tr.steps() == 7);
}

TEST_CASE("traces snapshot memory after every step") {
    front f = make_front("W = 2\nmaxsteps = 10\n",
                         "int i\n"
                         "i <- 1\n"
                         "i <- 2\n"
                         "i <- 3\n"
                         "return w @ 1\n");
    trace tr = run_source(f, "");
    REQUIRE(tr.halted);
    REQUIRE(tr.steps() == 4);
    REQUIRE(tr.mem.size() == 5);
    for (long long t = 0; t <= 3; ++t)
        CHECK(static_cast<long long>(read_word(tr.mem[static_cast<size_t>(t)],
                                               f.mem.of("i").base, 2)) == t);
    CHECK(tr.lines == std::vector<int>{0, 1, 2, 3});
    // the return step only touches w
    CHECK(tr.mem[4][static_cast<size_t>(f.mem.scalar_cell("w"))] == 1);
}

TEST_CASE("branches follow the guard conventions") {
    front f = make_front("W = 2\nmaxsteps = 30\n",
                         "bool g\nint i\n"
                         "if g then\n"
                         "  i <- 1\n"
                         "else\n"
                         "  i <- 2\n"
                         "endif\n"
                         "return w @ 0\n");
    trace off = run_source(f, "");
    REQUIRE(off.halted);
    CHECK(word_of(f, off.final_mem(), "i") == 2);

    front f2 = make_front("W = 2\nmaxsteps = 30\n",
                          "input bool g\nint i\n"
                          "if g then\n"
                          "  i <- 1\n"
                          "else\n"
                          "  i <- 2\n"
                          "endif\n"
                          "return w @ 0\n");
    trace on = run_source(f2, "g <- 1\n");
    REQUIRE(on.halted);
    CHECK(word_of(f2, on.final_mem(), "i") == 1);
}

TEST_CASE("a population counter computes the expected tally") {
    front f = make_front("m = 7\nW = 3\nmaxsteps = 120\n",
                         "input array p[$m$]\n"
                         "int i, c\n"
                         "bool g\n"
                         "for i <- 0, $m-1$ do\n"
                         "  g <- p[i]\n"
                         "  if g then\n"
                         "    c++\n"
                         "  endif\n"
                         "done\n"
                         "return w @ 1\n");
    trace tr = run_source(f, "array p[7] <- {1, 0, 1, 1, 0, 1, 1}\n");
    REQUIRE(tr.halted);
    CHECK(word_of(f, tr.final_mem(), "c") == 5);
    step_bounds sb = count_steps(f.prog, f.env);
    CHECK(tr.steps() <= sb.total_max);
    CHECK(tr.steps() >= sb.total_min);
}

TEST_CASE("input cells are never written back") {
    front f = make_front(corpus_text("ms5.param"), corpus_text("ms.spk"));
    instance_assignment inst = parse_instance(corpus_text("ms5.in"), f.ast);
    trace tr = run(f.prog, f.mem, inst, f.env.max_steps());
    REQUIRE(tr.halted);
    const region& p = f.mem.of("p");
    for (long long c = p.base; c < p.base + p.cells; ++c)
        for (const auto& layer : tr.mem)
            CHECK(layer[static_cast<size_t>(c)] == tr.mem[0][static_cast<size_t>(c)]);
}
