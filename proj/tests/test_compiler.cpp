#include "doctest.h"

#include "helpers.hpp"

#include "sparks/bounds.hpp"
#include "sparks/lower.hpp"

using namespace sparks;
using namespace sparks::test;

TEST_CASE("while lowering: test, negate, exit branch, body, back jump") {
    front f = make_front("W = 2\nmaxsteps = 50\nbound.while0 = 3\n",
                         "bool g\ng <- 1\nwhile g do\ng <- 0\ndone\nreturn w @ 0\n");
    CHECK(asm_to_text(f.prog) == "word 2\n"
                                 "decl bool g\n"
                                 "decl bool w\n"
                                 "decl bool _tmp0\n"
                                 "decl bool _tmp1\n"
                                 ". set g copy 1\n"
                                 "while0 set _tmp0 copy g\n"
                                 ". set _tmp1 not _tmp0\n"
                                 ". if _tmp1 while0_done\n"
                                 ". set g copy 0\n"
                                 ". goto while0\n"
                                 "while0_done return 0\n");
    step_bounds sb = count_steps(f.prog, f.env);
    // no iterations: setup + test + negate + branch + return
    CHECK(sb.total_min == 5);
    // three iterations of five lines, then the failing test
    CHECK(sb.total_max == 1 + 3 * 5 + 3 + 1);
}

TEST_CASE("for lowering with literal bounds runs the body once per value") {
    front f = make_front("W = 3\nmaxsteps = 50\n",
                         "int i, k\nfor i <- 0, 3 do\nk <- i\ndone\nreturn w @ 1\n");
    std::string text = asm_to_text(f.prog);
    CHECK(text.find("for0 set k copyw i\n"
                    ". set _tmp0 eqw i _fs0\n"
                    ". if _tmp0 for0_done\n"
                    ". set i incw i\n"
                    ". goto for0\n") != std::string::npos);
    step_bounds sb = count_steps(f.prog, f.env);
    // two setup lines, three full passes, the final discounted pass, return
    CHECK(sb.total_min == 21);
    CHECK(sb.total_max == 21);
}

TEST_CASE("for bounds wrap modulo the word size") {
    front f = make_front("W = 2\nmaxsteps = 50\n",
                         "int i\nfor i <- 3, 1 do\ni <- i\ndone\nreturn w @ 1\n");
    step_bounds sb = count_steps(f.prog, f.env);
    // i walks 3, 0, 1: three iterations
    CHECK(sb.total_max == 2 + 2 * 5 + 3 + 1);
    CHECK(sb.total_min == sb.total_max);
}

TEST_CASE("if costs count the longer arm") {
    front f = make_front("W = 2\nmaxsteps = 50\n",
                         "bool g\nint i\n"
                         "if g then\n"
                         "  i <- 1\n"
                         "else\n"
                         "  i <- 1\n"
                         "  i <- 2\n"
                         "  i <- 3\n"
                         "endif\n"
                         "return w @ 0\n");
    step_bounds sb = count_steps(f.prog, f.env);
    // then path: guard, unless, one line, skip jump; else path: guard, unless,
    // three lines
    CHECK(sb.total_max - sb.total_min == 1);
    trace tr = run(f.prog, f.mem, {}, f.env.max_steps());
    CHECK(tr.halted);
    CHECK(tr.steps() >= sb.total_min);
    CHECK(tr.steps() <= sb.total_max);
}

TEST_CASE("while loops demand an iteration bound key") {
    std::string msg = error_from(
        [] {
            front f = make_front("W = 2\nmaxsteps = 50\n",
                                 "bool g\nwhile g do\ng <- 0\ndone\nreturn w @ 0\n");
            count_steps(f.prog, f.env);
        },
        error_kind::bounds);
    CHECK(msg.find("bound.while0") != std::string::npos);
}

TEST_CASE("a horizon below the shortest run is rejected") {
    CHECK(!error_from(
               [] {
                   front f = make_front("W = 2\nmaxsteps = 3\n",
                                        "int i\ni <- 1\ni <- 2\ni <- 3\nreturn w @ 0\n");
                   count_steps(f.prog, f.env);
               },
               error_kind::bounds)
               .empty());
}

TEST_CASE("lowering is deterministic byte for byte") {
    for (const char* prog : {"ms.spk", "mm.spk"}) {
        std::string params = prog[1] == 's' ? "ms10.param" : "wt8.param";
        front a = make_front(corpus_text(params), corpus_text(prog));
        front b = make_front(corpus_text(params), corpus_text(prog));
        CHECK(asm_to_text(a.prog) == asm_to_text(b.prog));
    }
}

TEST_CASE("asm text round trips through the reader") {
    for (const char* prog : {"ms.spk", "mm.spk", "toy_mux.spk"}) {
        std::string params = prog[1] == 's'   ? "ms5.param"
                             : prog[1] == 'm' ? "wt8.param"
                                              : "toy_mux.param";
        front f = make_front(corpus_text(params), corpus_text(prog));
        std::string text = asm_to_text(f.prog);
        asm_program back = asm_from_text(text);
        CHECK(asm_to_text(back) == text);
        CHECK_FALSE(back.has_cost);
        REQUIRE(back.line_count() == f.prog.line_count());
        for (int i = 0; i < back.line_count(); ++i)
            CHECK(back.line(i).target == f.prog.line(i).target);
    }
}

TEST_CASE("phased programs carry contiguous ranges and seam-only crossings") {
    front f = make_front(corpus_text("wt8.param"), corpus_text("mm.spk"));
    REQUIRE(f.prog.phases == std::vector<std::string>{"init", "main"});
    REQUIRE(f.prog.phase_ranges.size() == 2);
    CHECK(f.prog.phase_ranges[0].first == 0);
    CHECK(f.prog.phase_ranges[1].first == f.prog.phase_ranges[0].second + 1);
    CHECK(f.prog.phase_ranges[1].second == f.prog.line_count() - 1);
    for (const auto& ins : f.prog.lines) {
        if (ins.target < 0)
            continue;
        int to = f.prog.lines[static_cast<size_t>(ins.target)].phase;
        bool seam = to == ins.phase + 1 &&
                    ins.target == f.prog.phase_ranges[static_cast<size_t>(to)].first;
        CHECK((to == ins.phase || seam));
    }
}

TEST_CASE("compiler temporaries come after the declared cells and the output bit") {
    front f = make_front(corpus_text("ms5.param"), corpus_text("ms.spk"));
    size_t w_at = 0;
    for (size_t i = 0; i < f.prog.decls.size(); ++i)
        if (f.prog.decls[i].name == "w")
            w_at = i;
    REQUIRE(w_at > 0);
    for (size_t i = 0; i < f.prog.decls.size(); ++i)
        CHECK((i > w_at) == (f.prog.decls[i].name[0] == '_'));
}

TEST_CASE("corpus step analysis matches the published windows") {
    front ms5 = make_front(corpus_text("ms5.param"), corpus_text("ms.spk"));
    step_bounds b5 = count_steps(ms5.prog, ms5.env);
    CHECK(b5.total_max == 223);

    front ms20 = make_front(corpus_text("ms20.param"), corpus_text("ms.spk"));
    CHECK(count_steps(ms20.prog, ms20.env).total_max == 793);

    front mm = make_front(corpus_text("wt8.param"), corpus_text("mm.spk"));
    step_bounds bm = count_steps(mm.prog, mm.env);
    REQUIRE(bm.windows.size() == 2);
    CHECK(bm.windows[0].name == "init");
    CHECK(bm.windows[0].start == 1);
    CHECK(bm.windows[0].stop == 393);
    CHECK(bm.windows[1].start == 307);
    CHECK(bm.windows[1].stop == 2000);
    CHECK(bm.p == 2000);
    for (int i = 0; i < mm.prog.line_count(); ++i) {
        CHECK(bm.start_of(i) >= 1);
        CHECK(bm.start_of(i) <= bm.stop_of(i));
        CHECK(bm.stop_of(i) <= bm.p);
    }
}

TEST_CASE("phase window overrides are validated against the horizon") {
    std::string src = "bool g\n"
                      "phase a do\ng <- 1\ndone\n"
                      "phase b do\nreturn w @ 0\ndone\n";
    front ok = make_front("W = 1\nmaxsteps = 10\nphase.a.stop = 4\nphase.b.start = 3\n", src);
    step_bounds sb = count_steps(ok.prog, ok.env);
    CHECK(sb.windows[0].stop == 4);
    CHECK(sb.windows[1].start == 3);
    CHECK(sb.windows[1].stop == 10);

    // a gap between consecutive windows is unreachable time
    CHECK(!error_from(
               [&] {
                   front f = make_front("W = 1\nmaxsteps = 10\nphase.a.stop = 3\n"
                                        "phase.b.start = 5\n",
                                        src);
                   count_steps(f.prog, f.env);
               },
               error_kind::bounds)
               .empty());
    // windows cannot run backwards
    CHECK(!error_from(
               [&] {
                   front f = make_front("W = 1\nmaxsteps = 10\nphase.b.start = 11\n", src);
                   count_steps(f.prog, f.env);
               },
               error_kind::bounds)
               .empty());
}
