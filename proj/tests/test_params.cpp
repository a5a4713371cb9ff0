#include "doctest.h"

#include "helpers.hpp"

#include "sparks/params.hpp"

using namespace sparks;
using namespace sparks::test;

TEST_CASE("parameter files evaluate expressions over earlier keys") {
    param_env env = parse_params("n = 8\n"
                                 "W = n\n"
                                 "m = 3 * n / 2 - 2\n"
                                 "maxsteps = (62 * n * n * n - 63 * n * n - 249 * n - 64) / 2\n");
    CHECK(env.get("n") == 8);
    CHECK(env.word_size() == 8);
    CHECK(env.get("m") == 10);
    CHECK(env.max_steps() == 12828);
}

TEST_CASE("comments, blank lines, and spacing are ignored") {
    param_env env = parse_params("# makespan instance\n"
                                 "\n"
                                 "  W=3   # three bit words\n"
                                 "maxsteps = 10\n");
    CHECK(env.word_size() == 3);
    CHECK(env.max_steps() == 10);
}

TEST_CASE("division must be exact") {
    std::string msg = error_from([] { parse_params("W = 7 / 2\nmaxsteps = 1\n"); },
                                 error_kind::parse);
    CHECK(msg.find("non-integer division") != std::string::npos);
    CHECK(parse_params("W = 8 / 2\nmaxsteps = 1\n").word_size() == 4);
}

TEST_CASE("required keys and ranges") {
    CHECK(error_from([] { parse_params("maxsteps = 5\n"); }, error_kind::parse)
              .find("'W'") != std::string::npos);
    CHECK(error_from([] { parse_params("W = 4\n"); }, error_kind::parse)
              .find("'maxsteps'") != std::string::npos);
    CHECK(!error_from([] { parse_params("W = 0\nmaxsteps = 5\n"); }, error_kind::parse).empty());
    CHECK(!error_from([] { parse_params("W = 63\nmaxsteps = 5\n"); }, error_kind::parse).empty());
    CHECK(!error_from([] { parse_params("W = 4\nmaxsteps = 0\n"); }, error_kind::parse).empty());
    CHECK(parse_params("W = 62\nmaxsteps = 1\n").word_size() == 62);
}

TEST_CASE("negative values and undefined references are rejected") {
    CHECK(error_from([] { parse_params("W = 2\nmaxsteps = 4\nk = 2 - 5\n"); },
                     error_kind::parse)
              .find("negative") != std::string::npos);
    CHECK(error_from([] { parse_params("W = q\nmaxsteps = 4\n"); }, error_kind::parse)
              .find("undefined parameter 'q'") != std::string::npos);
    CHECK(error_from([] { parse_params("W = 2\nW = 3\nmaxsteps = 4\n"); }, error_kind::parse)
              .find("duplicate") != std::string::npos);
}

TEST_CASE("d accepts rationals and decimals within [0, 1/2]") {
    CHECK(parse_params("W = 1\nmaxsteps = 1\nd = 1/4\n").d == rat(1, 4));
    CHECK(parse_params("W = 1\nmaxsteps = 1\nd = 0.125\n").d == rat(1, 8));
    CHECK(parse_params("W = 1\nmaxsteps = 1\nd = 0\n").d == rat(0));
    CHECK(parse_params("W = 1\nmaxsteps = 1\nd = 1/2\n").d == rat(1, 2));
    CHECK(!error_from([] { parse_params("W = 1\nmaxsteps = 1\nd = 3/4\n"); },
                      error_kind::parse)
               .empty());
    CHECK(!error_from([] { parse_params("W = 1\nmaxsteps = 1\nd = -1/4\n"); },
                      error_kind::parse)
               .empty());
    CHECK_FALSE(parse_params("W = 1\nmaxsteps = 1\n").has_d);
}

TEST_CASE("output lists and dotted bound keys") {
    param_env env = parse_params("n = 6\n"
                                 "W = n\n"
                                 "maxsteps = 100\n"
                                 "output = w, T\n"
                                 "bound.while0 = n / 2\n"
                                 "phase.init.stop = 50\n");
    REQUIRE(env.outputs.size() == 2);
    CHECK(env.outputs[0] == "w");
    CHECK(env.outputs[1] == "T");
    CHECK(env.get("bound.while0") == 3);
    CHECK(env.get("phase.init.stop") == 50);
    CHECK(env.get_or("bound.while9", -1) == -1);
}

TEST_CASE("eval_param_expr matches the file grammar") {
    std::map<std::string, long long> vals{{"n", 10}};
    CHECK(eval_param_expr("n * (n - 1) / 2", vals) == 45);
    CHECK(eval_param_expr("-3 + n", vals) == 7);
    CHECK(!error_from([&] { eval_param_expr("n +", vals); }, error_kind::parse).empty());
    CHECK(!error_from([&] { eval_param_expr("2 n", vals); }, error_kind::parse).empty());
    CHECK(!error_from([&] { eval_param_expr("(n", vals); }, error_kind::parse).empty());
    CHECK(!error_from([&] { eval_param_expr("n / 0", vals); }, error_kind::parse).empty());
}

TEST_CASE("corpus parameter files agree with their programs' needs") {
    param_env ms5 = parse_params(corpus_text("ms5.param"));
    CHECK(ms5.get("m") == 5);
    CHECK(ms5.get("n") == 3);
    CHECK(ms5.word_size() == 3);
    CHECK(ms5.outputs == std::vector<std::string>{"T"});

    param_env wt8 = parse_params(corpus_text("wt8.param"));
    CHECK(wt8.get("n") == 8);
    CHECK(wt8.word_size() == 8);
    CHECK(wt8.max_steps() == 2000);
    CHECK(wt8.get("phase.init.stop") == 393);
    CHECK(wt8.get("phase.main.start") == 307);
    CHECK(wt8.get("bound.while0") == 4);
}
