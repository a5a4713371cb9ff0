#include "doctest.h"

#include "helpers.hpp"

#include "sparks/instance.hpp"

using namespace sparks;
using namespace sparks::test;

namespace {

front scaffold() {
    return make_front("W = 4\nmaxsteps = 10\n",
                      "input bool g\n"
                      "input int s\n"
                      "input array p[5]\n"
                      "input matrix m[3,4]\n"
                      "int k\n"
                      "return w @ 0\n");
}

} // namespace

TEST_CASE("instances fill scalars, arrays, and matrices") {
    front f = scaffold();
    instance_assignment inst = parse_instance("# fixture\n"
                                              "g <- 1\n"
                                              "s <- 11\n"
                                              "array p[5] <- {0, 1, 1, 0, 1}\n"
                                              "matrix m[3,4] <- {\n"
                                              "{1,0,0,0},\n"
                                              "{0,1,0,0}\n"
                                              "{0,0,1,1}\n"
                                              "}\n",
                                              f.ast);
    std::vector<uint8_t> img = inst.image(f.mem);
    CHECK(img[static_cast<size_t>(f.mem.scalar_cell("g"))] == 1);
    // 11 = 1101 little endian over four cells
    CHECK(img[static_cast<size_t>(f.mem.int_bit("s", 0))] == 1);
    CHECK(img[static_cast<size_t>(f.mem.int_bit("s", 1))] == 1);
    CHECK(img[static_cast<size_t>(f.mem.int_bit("s", 2))] == 0);
    CHECK(img[static_cast<size_t>(f.mem.int_bit("s", 3))] == 1);
    CHECK(img[static_cast<size_t>(f.mem.elem1d("p", 2))] == 1);
    CHECK(img[static_cast<size_t>(f.mem.elem1d("p", 3))] == 0);
    CHECK(img[static_cast<size_t>(f.mem.elem2d("m", 2, 3))] == 1);
    CHECK(img[static_cast<size_t>(f.mem.elem2d("m", 1, 0))] == 0);
    // non-input scalar stays zero
    CHECK(img[static_cast<size_t>(f.mem.int_bit("k", 0))] == 0);
}

TEST_CASE("unassigned inputs default to zero") {
    front f = scaffold();
    instance_assignment inst = parse_instance("g <- 1\n", f.ast);
    std::vector<uint8_t> img = inst.image(f.mem);
    CHECK(img[static_cast<size_t>(f.mem.int_bit("s", 0))] == 0);
    CHECK(img[static_cast<size_t>(f.mem.elem1d("p", 4))] == 0);

    // input_cells always spans every input cell, assigned or not
    auto cells = inst.input_cells(f.mem);
    CHECK(cells.size() == 1 + 4 + 5 + 12);
    auto bits = inst.input_bits(f.mem);
    REQUIRE(bits.size() == cells.size());
    long long ones = 0;
    for (uint8_t b : bits)
        ones += b;
    CHECK(ones == 1);
}

TEST_CASE("instance errors: shapes, ranges, duplicates, unknown names") {
    front f = scaffold();
    auto bad = [&](const std::string& text) {
        return error_from([&] { parse_instance(text, f.ast); }, error_kind::parse);
    };
    CHECK(!bad("array p[4] <- {0,0,0,0}\n").empty());
    CHECK(!bad("array p[5] <- {0,0,0,0}\n").empty());
    CHECK(!bad("array p[5] <- {0,0,0,0,2}\n").empty());
    CHECK(!bad("matrix m[3,4] <- {{0,0,0,0},{0,0,0,0}}\n").empty());
    CHECK(bad("s <- 16\n").find("exceeds") != std::string::npos);
    CHECK(!bad("g <- 1\ng <- 0\n").empty());
    CHECK(!bad("q <- 1\n").empty());
    CHECK(!bad("k <- 1\n").empty());
    CHECK(parse_instance("s <- 15\n", f.ast).values.count("s") == 1);
}

TEST_CASE("corpus instances load against their programs") {
    front ms = make_front(corpus_text("ms5.param"), corpus_text("ms.spk"));
    instance_assignment inst = parse_instance(corpus_text("ms5.in"), ms.ast);
    auto bits = inst.input_bits(ms.mem);
    REQUIRE(bits.size() == 5);
    CHECK(static_cast<int>(bits[1] + bits[2]) == 2);
    CHECK(static_cast<int>(bits[0] + bits[3] + bits[4]) == 0);

    front mm = make_front(corpus_text("wt8.param"), corpus_text("mm.spk"));
    instance_assignment wt8 = parse_instance(corpus_text("wt8.in"), mm.ast);
    auto abits = wt8.input_bits(mm.mem);
    REQUIRE(abits.size() == 64);
    long long edges = 0, matched = 0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            if (j > i)
                edges += abits[static_cast<size_t>(i * 8 + j)];
            if (j < i)
                matched += abits[static_cast<size_t>(i * 8 + j)];
        }
    CHECK(edges == 15);
    CHECK(matched == 3);
}
