#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "sparks/bounds.hpp"
#include "sparks/instance.hpp"
#include "sparks/interp.hpp"
#include "sparks/lower.hpp"
#include "sparks/lp_write.hpp"
#include "sparks/lpgen.hpp"
#include "sparks/objective.hpp"
#include "sparks/parser.hpp"
#include "sparks/solver.hpp"
#include "sparks/trace_point.hpp"
#include "sparks/traceviz.hpp"
#include "sparks/util.hpp"
#include "sparks/verify.hpp"

namespace fs = std::filesystem;
using namespace sparks;

namespace {

int exit_code_for(error_kind k) {
    switch (k) {
    case error_kind::parse: return 2;
    case error_kind::bounds: return 3;
    case error_kind::solver: return 4;
    case error_kind::verify: return 5;
    case error_kind::io: return 6;
    case error_kind::internal: return 7;
    }
    return 7;
}

struct options {
    std::string spk, param, instance;
    std::string workdir = ".";
    std::string format = "lp";
    std::string solver_cmd;
    std::string sol_file;
    std::string compare_file;
    std::string d_override;
    long long timeout = 60;
    bool fix = false;
    bool emit_asm = false;
    bool verify_exact = false;
    bool dump_memory = false;
};

struct pipeline {
    param_env env;
    sparks_ast ast;
    asm_program prog;
};

pipeline load_front(const options& o) {
    pipeline p;
    p.env = parse_params(read_file(o.param));
    if (!o.d_override.empty()) {
        rat r;
        if (!parse_rat(o.d_override, r) || r < rat(0) || rat(2) * r > rat(1))
            fail(error_kind::parse, "--d must be a rational in [0, 1/2]");
        p.env.d = r;
        p.env.has_d = true;
    }
    p.ast = parse_sparks(read_file(o.spk), p.env);
    p.prog = lower(p.ast);
    return p;
}

std::string stem_of(const std::string& path) {
    return fs::path(path).stem().string();
}

std::string art(const options& o, const std::string& base, const char* ext) {
    return (fs::path(o.workdir) / (base + ext)).string();
}

template <class Fn>
void atomic_stream(const std::string& path, Fn&& fn) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os)
            fail(error_kind::io, "cannot open '" + tmp + "' for writing");
        fn(os);
        os.flush();
        if (!os)
            fail(error_kind::io, "write failed for '" + tmp + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec)
        fail(error_kind::io, "cannot rename '" + tmp + "': " + ec.message());
}

std::string region_value(const memory_map& mem, const region& r,
                         const std::vector<uint8_t>& img) {
    auto bit = [&](long long c) {
        return static_cast<int>(img[static_cast<size_t>(c)]);
    };
    switch (r.k) {
    case decl::kind::scalar_bool:
        return std::to_string(bit(r.base));
    case decl::kind::scalar_int: {
        long long v = 0;
        for (long long b = 0; b < mem.word_size; ++b)
            v |= static_cast<long long>(bit(r.base + b)) << b;
        return std::to_string(v);
    }
    case decl::kind::array1d: {
        std::string s = "{";
        for (long long i = 0; i < r.d1; ++i)
            s += std::to_string(bit(r.base + i)) + (i + 1 < r.d1 ? "," : "");
        return s + "}";
    }
    case decl::kind::matrix: {
        std::string s = "{";
        for (long long i = 0; i < r.d1; ++i) {
            s += "{";
            for (long long j = 0; j < r.d2; ++j)
                s += std::to_string(bit(r.base + i * r.d2 + j)) +
                     (j + 1 < r.d2 ? "," : "");
            s += i + 1 < r.d1 ? "}," : "}";
        }
        return s + "}";
    }
    }
    return "?";
}

void report_outputs(std::ostream& os, const param_env& env, const memory_map& mem,
                    const std::vector<uint8_t>& img) {
    for (const auto& name : env.outputs) {
        const region* r = mem.find(name);
        if (!r)
            fail(error_kind::parse, "output '" + name + "' is not declared");
        os << name << " = " << region_value(mem, *r, img) << "\n";
    }
}

rat point_objective(const lp_objective& obj, const trace_point& pt) {
    rat v(obj.constant);
    for (const auto& [ref, coef] : obj.input_terms)
        v += rat(coef * pt.value(ref));
    v += obj.d * rat(pt.value(obj.output));
    return v;
}

// Memory image at the horizon reconstructed from a solver solution.
std::vector<uint8_t> final_image_of(const lp_build_info& info,
                                    const std::map<std::string, rat>& sol) {
    std::vector<uint8_t> img(static_cast<size_t>(info.mem.total), 0);
    for (long long c = 0; c < info.mem.total; ++c) {
        auto it = sol.find(var_ref::mem(c, info.p).name());
        if (it != sol.end() && rat(2) * it->second > rat(1))
            img[static_cast<size_t>(c)] = 1;
    }
    return img;
}

viz_trace viz_from_csv(const std::string& text) {
    viz_trace v;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (trim(line).empty())
            continue;
        auto parts = split_on(line, ',');
        if (parts.size() != 3)
            fail(error_kind::parse, "bad trace CSV line: " + line);
        long long t, ln, fl;
        if (!parse_int(parts[0], t) || !parse_int(parts[1], ln) || !parse_int(parts[2], fl))
            fail(error_kind::parse, "bad trace CSV line: " + line);
        v.line_at.push_back(static_cast<int>(ln));
        v.flagged.push_back(fl != 0);
        v.p = t;
    }
    return v;
}

void write_report(const options& o, const std::string& text) {
    fs::create_directories(o.workdir);
    atomic_write_file(art(o, "report", ".txt"), text);
    std::cout << text;
}

lp_stats write_model(const options& o, const std::string& base,
                     const lp_build_info& info, const lp_options& opt,
                     const lp_objective& obj, std::string& lp_path) {
    lp_stats st;
    lp_path = art(o, base, o.format == "mps" ? ".mps" : ".lp");
    atomic_stream(lp_path, [&](std::ostream& os) {
        st = o.format == "mps" ? write_mps(os, info, opt, obj)
                               : write_lp_text(os, info, opt, obj);
    });
    atomic_stream(art(o, base, ".names"),
                  [&](std::ostream& os) { write_names(os, info); });
    return st;
}

int cmd_compile(const options& o) {
    pipeline pl = load_front(o);
    step_bounds sb = count_steps(pl.prog, pl.env);
    memory_map mem = layout_memory(pl.prog.decls, pl.ast.word_size);
    fs::create_directories(o.workdir);
    std::string asm_text = asm_to_text(pl.prog);
    atomic_write_file(art(o, stem_of(o.param), ".asm"), asm_text);

    std::ostringstream rep;
    rep << "program: " << o.spk << "\n";
    rep << "lines: " << pl.prog.line_count() << "\n";
    rep << "cells: " << mem.total << "\n";
    rep << "horizon: " << sb.p << "\n";
    rep << "steps: between " << sb.total_min << " and " << sb.total_max << "\n";
    for (const auto& w : sb.windows)
        rep << "phase " << w.name << ": t in [" << w.start << ", " << w.stop
            << "]\n";
    write_report(o, rep.str());
    if (o.emit_asm)
        std::cout << asm_text;
    return 0;
}

int cmd_lp(const options& o) {
    pipeline pl = load_front(o);
    lp_build_info info = prepare_lp(pl.prog, pl.env);
    lp_options opt;
    lp_objective obj;
    instance_assignment inst;
    if (!o.instance.empty()) {
        inst = parse_instance(read_file(o.instance), pl.ast);
        obj = build_objective(info, inst, pl.env.d);
        if (o.fix)
            opt.fix_inputs = &inst;
    } else {
        obj.d = pl.env.d;
        obj.output = var_ref::mem(info.mem.scalar_cell("w"), info.p);
    }
    fs::create_directories(o.workdir);
    std::string base = stem_of(o.instance.empty() ? o.param : o.instance);
    std::string lp_path;
    lp_stats st = write_model(o, base, info, opt, obj, lp_path);

    std::ostringstream rep;
    rep << "model: " << lp_path << "\n";
    rep << "rows: " << st.rows << "\n";
    rep << "cols: " << st.cols << "\n";
    rep << "nonzeros: " << st.nonzeros << "\n";
    if (!o.instance.empty())
        rep << "objective bits: " << obj.input_terms.size()
            << ", d = " << obj.d.to_string() << (o.fix ? ", inputs fixed" : "")
            << "\n";
    write_report(o, rep.str());
    return 0;
}

int solve_and_verify(const options& o, const std::string& base,
                     const lp_build_info& info, const lp_options& opt,
                     const lp_objective& obj, const std::string& lp_path,
                     std::ostringstream& rep, viz_trace& sol_viz,
                     std::vector<uint8_t>& sol_img) {
    std::string sol_path = art(o, base, ".sol");
    invoke_solver(o.solver_cmd, lp_path, sol_path, o.timeout);
    auto sol = parse_solution(read_file(sol_path));
    if (sol.empty())
        fail(error_kind::solver, "no variables found in '" + sol_path + "'");

    verify_report vr = verify_solution(info, opt, obj, sol);
    rep << "solution variables: " << sol.size() << "\n";
    rep << "verified rows: " << vr.rows << ", violations: " << vr.violations
        << ", bound violations: " << vr.bound_violations
        << ", nonintegral: " << vr.nonintegral << ", missing: " << vr.missing
        << "\n";
    rep << "solver objective: " << vr.objective.to_string() << "\n";
    if (!vr.first_violation.empty())
        rep << "first violation: " << vr.first_violation << "\n";

    sol_viz = trace_from_solution(info, sol);
    atomic_stream(art(o, base, ".sol.trace.csv"),
                  [&](std::ostream& os) { render_csv(os, sol_viz); });
    sol_img = final_image_of(info, sol);
    return vr.feasible() ? 0 : exit_code_for(error_kind::verify);
}

int cmd_run(const options& o) {
    pipeline pl = load_front(o);
    lp_build_info info = prepare_lp(pl.prog, pl.env);
    instance_assignment inst = parse_instance(read_file(o.instance), pl.ast);
    fs::create_directories(o.workdir);
    std::string base = stem_of(o.instance);

    if (o.emit_asm)
        atomic_write_file(art(o, stem_of(o.param), ".asm"), asm_to_text(pl.prog));

    trace tr = run(pl.prog, info.mem, inst, info.p);
    if (tr.faulted)
        fail(error_kind::bounds, "interpreter fault: " + tr.fault);
    if (!tr.halted)
        fail(error_kind::bounds, "program did not halt within " +
                                     std::to_string(info.p) + " steps");

    std::ostringstream rep;
    rep << "instance: " << o.instance << "\n";
    rep << "steps = " << tr.steps() << "\n";
    rep << "w = " << tr.w << "\n";
    report_outputs(rep, pl.env, info.mem, tr.final_mem());

    viz_trace vz = trace_from_interp(info, tr);
    atomic_stream(art(o, base, ".trace.csv"),
                  [&](std::ostream& os) { render_csv(os, vz); });
    atomic_stream(art(o, base, ".svg"),
                  [&](std::ostream& os) { render_svg(os, vz); });

    if (o.dump_memory) {
        atomic_stream(art(o, base, ".mem.txt"), [&](std::ostream& os) {
            for (long long t = 0; t <= tr.steps(); ++t) {
                os << "t=" << t << "\n";
                for (const auto& r : info.mem.regions)
                    os << "  " << r.name << " = "
                       << region_value(info.mem, r, tr.mem[static_cast<size_t>(t)])
                       << "\n";
            }
        });
    }

    lp_objective obj = build_objective(info, inst, pl.env.d);
    lp_options opt;
    if (o.fix)
        opt.fix_inputs = &inst;

    int rc = 0;
    if (o.verify_exact) {
        trace_point pt = trace_to_point(info, tr);
        point_check_sink sink(pt);
        emit_lp_rows(info, opt, sink);
        rep << "exact check: " << sink.rows << " rows, " << sink.violations
            << " violations\n";
        rep << "objective = " << point_objective(obj, pt).to_string() << "\n";
        if (sink.violations > 0) {
            rep << "first violation: " << sink.first_violation << "\n";
            rc = exit_code_for(error_kind::verify);
        }
    }

    if (!o.solver_cmd.empty()) {
        std::string lp_path;
        write_model(o, base, info, opt, obj, lp_path);
        viz_trace sol_viz;
        std::vector<uint8_t> sol_img;
        int src = solve_and_verify(o, base, info, opt, obj, lp_path, rep,
                                   sol_viz, sol_img);
        std::string d = diff_traces(vz, sol_viz);
        rep << (d.empty() ? "solver trace matches the interpreter\n"
                          : "solver trace differs:\n" + d);
        if (src != 0)
            rc = src;
        else if (!d.empty())
            rc = exit_code_for(error_kind::verify);
    }

    write_report(o, rep.str());
    return rc;
}

int cmd_solve(const options& o) {
    if (o.solver_cmd.empty())
        fail(error_kind::solver,
             "no solver command; pass --solver-cmd or set SPARKS_SOLVER");
    pipeline pl = load_front(o);
    lp_build_info info = prepare_lp(pl.prog, pl.env);
    instance_assignment inst = parse_instance(read_file(o.instance), pl.ast);
    fs::create_directories(o.workdir);
    std::string base = stem_of(o.instance);

    lp_objective obj = build_objective(info, inst, pl.env.d);
    lp_options opt;
    if (o.fix)
        opt.fix_inputs = &inst;
    std::string lp_path;
    lp_stats st = write_model(o, base, info, opt, obj, lp_path);

    std::ostringstream rep;
    rep << "model: " << lp_path << " (" << st.rows << " rows, " << st.cols
        << " cols)\n";
    viz_trace sol_viz;
    std::vector<uint8_t> sol_img;
    int rc = solve_and_verify(o, base, info, opt, obj, lp_path, rep, sol_viz,
                              sol_img);
    atomic_stream(art(o, base, ".trace.csv"),
                  [&](std::ostream& os) { render_csv(os, sol_viz); });
    atomic_stream(art(o, base, ".svg"),
                  [&](std::ostream& os) { render_svg(os, sol_viz); });
    rep << "halt step: " << sol_viz.halt_t << "\n";
    long long wcell = info.mem.scalar_cell("w");
    rep << "w = " << static_cast<int>(sol_img[static_cast<size_t>(wcell)]) << "\n";
    report_outputs(rep, pl.env, info.mem, sol_img);
    write_report(o, rep.str());
    return rc;
}

int cmd_trace(const options& o) {
    pipeline pl = load_front(o);
    lp_build_info info = prepare_lp(pl.prog, pl.env);
    fs::create_directories(o.workdir);

    viz_trace vz;
    std::string base;
    if (!o.sol_file.empty()) {
        auto sol = parse_solution(read_file(o.sol_file));
        if (sol.empty())
            fail(error_kind::solver, "no variables found in '" + o.sol_file + "'");
        vz = trace_from_solution(info, sol);
        base = stem_of(o.sol_file);
    } else {
        if (o.instance.empty())
            fail(error_kind::parse, "trace needs an instance file or --sol");
        instance_assignment inst = parse_instance(read_file(o.instance), pl.ast);
        trace tr = run(pl.prog, info.mem, inst, info.p);
        if (tr.faulted)
            fail(error_kind::bounds, "interpreter fault: " + tr.fault);
        vz = trace_from_interp(info, tr);
        base = stem_of(o.instance);
    }
    atomic_stream(art(o, base, ".trace.csv"),
                  [&](std::ostream& os) { render_csv(os, vz); });
    atomic_stream(art(o, base, ".svg"),
                  [&](std::ostream& os) { render_svg(os, vz); });
    std::cout << "trace: " << art(o, base, ".trace.csv") << "\n";
    std::cout << "halt step: " << vz.halt_t << "\n";

    if (!o.compare_file.empty()) {
        viz_trace other = viz_from_csv(read_file(o.compare_file));
        std::string d = diff_traces(vz, other);
        std::cout << (d.empty() ? "traces identical\n" : d);
    }
    return 0;
}

struct hash_sink : row_sink {
    uint64_t h = 1469598103934665603ULL;
    long long rows = 0;
    void mix(uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    }
    void row(const lp_row& r) override {
        ++rows;
        for (char c : r.name)
            mix(static_cast<uint64_t>(static_cast<unsigned char>(c)));
        mix(r.s == sense::eq ? 1 : 2);
        mix(static_cast<uint64_t>(r.rhs));
        for (size_t i = 0; i < r.nterms; ++i) {
            mix(r.terms[i].first.key());
            mix(static_cast<uint64_t>(r.terms[i].second));
        }
    }
};

int cmd_check(const options& o) {
    pipeline pl = load_front(o);
    lp_build_info info = prepare_lp(pl.prog, pl.env);
    lp_options opt;
    instance_assignment inst;
    lp_objective obj;
    bool have_inst = !o.instance.empty();
    if (have_inst) {
        inst = parse_instance(read_file(o.instance), pl.ast);
        obj = build_objective(info, inst, pl.env.d);
        if (o.fix)
            opt.fix_inputs = &inst;
    }

    int failures = 0;
    auto line = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "PASS  " : "FAIL  ") << what << "\n";
        if (!ok)
            ++failures;
    };

    hash_sink h1, h2;
    emit_lp_rows(info, opt, h1);
    emit_lp_rows(info, opt, h2);
    line(h1.h == h2.h && h1.rows == h2.rows,
         "row stream is deterministic (" + std::to_string(h1.rows) + " rows)");

    row_counter rc;
    emit_lp_rows(info, opt, rc);
    line(rc.rows == h1.rows, "row count stable across sinks");
    std::cout << "      rows " << rc.rows << ", cols " << info.var_total()
              << ", terms " << rc.terms << "\n";

    if (have_inst) {
        trace tr = run(pl.prog, info.mem, inst, info.p);
        line(!tr.faulted && tr.halted, "interpreter halts cleanly");
        if (!tr.faulted && tr.halted) {
            trace_point pt = trace_to_point(info, tr);
            point_check_sink sink(pt);
            emit_lp_rows(info, opt, sink);
            line(sink.violations == 0,
                 "trace point satisfies all " + std::to_string(sink.rows) +
                     " rows" +
                     (sink.violations ? " (first: " + sink.first_violation + ")"
                                      : ""));
            rat objv = point_objective(obj, pt);
            rat want = rat(static_cast<long long>(obj.input_terms.size())) +
                       obj.d * rat(pt.value(obj.output));
            line(objv == want, "trace point objective = " + objv.to_string());
        }
    }
    return failures == 0 ? 0 : exit_code_for(error_kind::verify);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparks to LP toolchain: compile programs, emit models, run, "
                 "solve, and verify"};
    app.require_subcommand(1);
    options o;

    auto add_front = [&](CLI::App* c, bool with_inst, bool inst_required) {
        c->add_option("spk", o.spk, "Sparks source file")->required();
        c->add_option("param", o.param, "parameter file")->required();
        if (with_inst) {
            auto* opt = c->add_option("instance", o.instance, "instance file");
            if (inst_required)
                opt->required();
        }
        c->add_option("--workdir", o.workdir, "artifact directory");
    };
    auto add_obj = [&](CLI::App* c) {
        c->add_flag("-f,--fix-inputs", o.fix, "pin inputs at time 0");
        c->add_option("--d", o.d_override, "objective weight d in [0, 1/2]");
    };
    auto add_solver = [&](CLI::App* c) {
        c->add_option("--solver-cmd", o.solver_cmd,
                      "solver command with {lp} and {sol} placeholders")
            ->envname("SPARKS_SOLVER");
        c->add_option("--timeout", o.timeout, "solver wall clock limit, seconds");
    };

    auto* c_compile = app.add_subcommand("compile", "lower to branch form and report step bounds");
    add_front(c_compile, false, false);
    c_compile->add_flag("--emit-asm", o.emit_asm, "print the lowered program");

    auto* c_lp = app.add_subcommand("lp", "emit the instance-independent model");
    add_front(c_lp, false, false);
    add_obj(c_lp);
    c_lp->add_option("--format", o.format, "lp or mps")
        ->check(CLI::IsMember({"lp", "mps"}));

    auto* c_inject = app.add_subcommand("inject", "emit the model with an instance objective");
    add_front(c_inject, true, true);
    add_obj(c_inject);
    c_inject->add_option("--format", o.format, "lp or mps")
        ->check(CLI::IsMember({"lp", "mps"}));

    auto* c_run = app.add_subcommand("run", "interpret an instance and cross check the model");
    add_front(c_run, true, true);
    add_obj(c_run);
    add_solver(c_run);
    c_run->add_flag("--emit-asm", o.emit_asm, "also write the lowered program");
    c_run->add_flag("--verify-exact", o.verify_exact,
                    "check the embedded trace point against every row");
    c_run->add_flag("--dump-memory", o.dump_memory, "write per step memory values");
    c_run->add_option("--format", o.format, "lp or mps")
        ->check(CLI::IsMember({"lp", "mps"}));

    auto* c_solve = app.add_subcommand("solve", "emit, solve externally, verify, and read out");
    add_front(c_solve, true, true);
    add_obj(c_solve);
    add_solver(c_solve);
    c_solve->add_option("--format", o.format, "lp or mps")
        ->check(CLI::IsMember({"lp", "mps"}));

    auto* c_trace = app.add_subcommand("trace", "render a run or a solution as CSV and SVG");
    add_front(c_trace, true, false);
    c_trace->add_option("--sol", o.sol_file, "solution file to extract the trace from");
    c_trace->add_option("--compare", o.compare_file, "trace CSV to diff against");

    auto* c_check = app.add_subcommand("check", "model self checks; add an instance for a trace point check");
    add_front(c_check, true, false);
    add_obj(c_check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand(c_compile))
            return cmd_compile(o);
        if (app.got_subcommand(c_lp))
            return cmd_lp(o);
        if (app.got_subcommand(c_inject))
            return cmd_lp(o);
        if (app.got_subcommand(c_run))
            return cmd_run(o);
        if (app.got_subcommand(c_solve))
            return cmd_solve(o);
        if (app.got_subcommand(c_trace))
            return cmd_trace(o);
        if (app.got_subcommand(c_check))
            return cmd_check(o);
    } catch (const toolchain_error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 7;
    }
    return 7;
}
