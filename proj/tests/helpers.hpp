#pragma once

#include "sparks/bounds.hpp"
#include "sparks/instance.hpp"
#include "sparks/interp.hpp"
#include "sparks/lower.hpp"
#include "sparks/lpgen.hpp"
#include "sparks/params.hpp"
#include "sparks/parser.hpp"
#include "sparks/util.hpp"

#include <string>

namespace sparks::test {

inline std::string corpus(const std::string& name) {
    return std::string(SPARKS_CORPUS_DIR "/") + name;
}

inline std::string corpus_text(const std::string& name) { return read_file(corpus(name)); }

// Front end over in-memory strings, mirroring the CLI pipeline.
struct front {
    param_env env;
    sparks_ast ast;
    asm_program prog;
    memory_map mem;
};

inline front make_front(const std::string& params, const std::string& source) {
    front f;
    f.env = parse_params(params);
    f.ast = parse_sparks(source, f.env);
    f.prog = lower(f.ast);
    f.mem = layout_memory(f.prog.decls, f.prog.word_size);
    return f;
}

inline trace run_source(const front& f, const std::string& instance_text) {
    instance_assignment inst = parse_instance(instance_text, f.ast);
    return run(f.prog, f.mem, inst, f.env.max_steps());
}

// Expects a toolchain_error of the given kind whose message contains `needle`.
template <class Fn>
std::string error_from(Fn&& fn, error_kind want) {
    try {
        fn();
    } catch (const toolchain_error& e) {
        if (e.kind() != want)
            return std::string("wrong kind: ") + e.what();
        return e.what();
    }
    return "";
}

} // namespace sparks::test
