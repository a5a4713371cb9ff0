#include "doctest.h"

#include "helpers.hpp"

#include "sparks/oracles.hpp"

#include <set>

using namespace sparks;
using namespace sparks::test;

TEST_CASE("brute makespan on hand instances") {
    CHECK(brute_makespan(0, 0, 3) == 0);
    CHECK(brute_makespan(0, 5, 1) == 5);
    CHECK(brute_makespan(3, 0, 1) == 6);
    CHECK(brute_makespan(1, 4, 3) == 2);
    CHECK(brute_makespan(2, 2, 2) == 3);
    CHECK(brute_makespan(4, 1, 3) == 4);
    CHECK(brute_makespan(2, 3, 3) == 3);
}

TEST_CASE("the closed form agrees with brute force everywhere in range") {
    for (long long n = 1; n <= 4; ++n)
        for (long long a = 0; a <= 8; ++a)
            for (long long b = 0; b <= 8 - a; ++b) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(n);
                CHECK(brute_makespan(a, b, n) == analytic_makespan(a, b, n));
            }
}

TEST_CASE("matching validity checks edges and endpoint reuse") {
    graph_instance g;
    g.n = 4;
    g.edges = {{0, 1}, {1, 2}, {2, 3}};
    g.matching = {{0, 1}, {2, 3}};
    CHECK(matching_is_valid(g));
    g.matching = {{0, 2}};
    CHECK_FALSE(matching_is_valid(g));
    g.matching = {{0, 1}, {1, 2}};
    CHECK_FALSE(matching_is_valid(g));
}

TEST_CASE("brute maximum matching on hand graphs") {
    graph_instance path;
    path.n = 4;
    path.edges = {{0, 1}, {1, 2}, {2, 3}};
    CHECK(brute_max_matching(path) == 2);

    graph_instance triangle;
    triangle.n = 3;
    triangle.edges = {{0, 1}, {0, 2}, {1, 2}};
    CHECK(brute_max_matching(triangle) == 1);

    graph_instance c5;
    c5.n = 5;
    c5.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
    CHECK(brute_max_matching(c5) == 2);

    graph_instance empty;
    empty.n = 6;
    CHECK(brute_max_matching(empty) == 0);
}

TEST_CASE("the decision answer flags non-maximum matchings") {
    graph_instance g;
    g.n = 4;
    g.edges = {{0, 1}, {1, 2}, {2, 3}};
    g.matching = {{1, 2}};
    CHECK(matching_answer(g) == 1); // 0-1-2-3 augments
    g.matching = {{0, 1}, {2, 3}};
    CHECK(matching_answer(g) == 0);
}

TEST_CASE("the chain family always leaves an augmenting path") {
    for (int n : {4, 6, 8, 10, 12}) {
        graph_instance g = gen_tr_graph(n);
        CHECK(g.n == n);
        CHECK(static_cast<int>(g.edges.size()) == (3 * n - 2) / 2);
        CHECK(static_cast<int>(g.matching.size()) == (n - 2) / 2);
        CHECK(matching_is_valid(g));
        CHECK(matching_answer(g) == 1);
    }
    CHECK(static_cast<int>(gen_tr_graph(10).edges.size()) == 14);
    CHECK(static_cast<int>(gen_tr_graph(12).edges.size()) == 17);
}

TEST_CASE("random instances are valid, deterministic, and mixed") {
    int augs = 0, maxes = 0;
    for (uint32_t seed = 0; seed < 60; ++seed) {
        int n = 3 + static_cast<int>(seed % 4);
        graph_instance g = random_graph_with_matching(n, seed);
        CHECK(matching_is_valid(g));
        graph_instance again = random_graph_with_matching(n, seed);
        CHECK(g.edges == again.edges);
        CHECK(g.matching == again.matching);
        (matching_answer(g) ? augs : maxes) += 1;
    }
    CHECK(augs > 5);
    CHECK(maxes > 5);
}

TEST_CASE("instance text encodes adjacency above and matching below the diagonal") {
    graph_instance g;
    g.n = 4;
    g.edges = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
    g.matching = {{1, 2}};
    std::string text = graph_to_instance_text(g);

    front f = make_front("n = 4\nW = n\nmaxsteps = 10\n",
                         "input matrix a[$n$,$n$]\nreturn w @ 0\n");
    instance_assignment inst = parse_instance(text, f.ast);
    std::vector<uint8_t> img = inst.image(f.mem);
    auto at = [&](long long i, long long j) {
        return static_cast<int>(img[static_cast<size_t>(f.mem.elem2d("a", i, j))]);
    };
    std::set<std::pair<int, int>> es(g.edges.begin(), g.edges.end());
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            CHECK(at(i, j) == (es.count({i, j}) ? 1 : 0));
    CHECK(at(2, 1) == 1);
    CHECK(at(1, 0) + at(3, 0) + at(3, 1) + at(3, 2) == 0);
    for (int i = 0; i < 4; ++i)
        CHECK(at(i, i) == 0);
}

TEST_CASE("corpus fixtures match their generators and oracles") {
    // the two shipped wt8 graphs: 15 edges, matching {0-1? no: (1,0),(3,2),(5,4)}
    front f = make_front(corpus_text("wt8.param"), corpus_text("mm.spk"));
    for (const char* name : {"wt8.in", "wt8a.in"}) {
        instance_assignment inst = parse_instance(corpus_text(name), f.ast);
        std::vector<uint8_t> img = inst.image(f.mem);
        graph_instance g;
        g.n = 8;
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j) {
                if (img[static_cast<size_t>(f.mem.elem2d("a", i, j))])
                    g.edges.push_back({i, j});
                if (img[static_cast<size_t>(f.mem.elem2d("a", j, i))])
                    g.matching.push_back({i, j});
            }
        CHECK(matching_is_valid(g));
        int want = name[3] == 'a' ? 1 : 0;
        CHECK(matching_answer(g) == want);
    }

    // tr10/tr12 fixture text equals the generator's output
    for (int n : {10, 12}) {
        std::string params = "n = " + std::to_string(n) + "\nW = n\nmaxsteps = 10\n";
        front fr = make_front(params, "input matrix a[$n$,$n$]\nreturn w @ 0\n");
        std::string fixture = corpus_text("tr" + std::to_string(n) + ".in");
        instance_assignment from_file = parse_instance(fixture, fr.ast);
        instance_assignment from_gen =
            parse_instance(graph_to_instance_text(gen_tr_graph(n)), fr.ast);
        CHECK(from_file.image(fr.mem) == from_gen.image(fr.mem));
    }
}
