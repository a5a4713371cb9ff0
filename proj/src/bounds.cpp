#include "sparks/bounds.hpp"

#include "sparks/diagnostics.hpp"

namespace sparks {
namespace {

constexpr long long cost_cap = 1'000'000'000'000'000LL;

long long sat_add(long long a, long long b) {
    if (a > cost_cap - b)
        return cost_cap;
    return a + b;
}

long long sat_mul(long long a, long long b) {
    if (a == 0 || b == 0)
        return 0;
    if (a > cost_cap / b)
        return cost_cap;
    return a * b;
}

struct span {
    long long mn = 0, mx = 0;
};

span eval(const cost_node& node, const param_env& env, long long word_size) {
    switch (node.k) {
    case cost_node::kind::fixed:
        return {node.fixed, node.fixed};
    case cost_node::kind::seq: {
        span s;
        for (const auto& c : node.children) {
            span cs = eval(c, env, word_size);
            s.mn = sat_add(s.mn, cs.mn);
            s.mx = sat_add(s.mx, cs.mx);
        }
        return s;
    }
    case cost_node::kind::branch: {
        span a = eval(node.children[0], env, word_size);
        span b = eval(node.children[1], env, word_size);
        return {sat_add(node.fixed, std::min(a.mn, b.mn)),
                sat_add(node.fixed, std::max(a.mx, b.mx))};
    }
    case cost_node::kind::loop: {
        span iter = eval(node.children[0], env, word_size);
        span exit = eval(node.children[1], env, word_size);
        long long lo = node.iters_min;
        long long hi = node.iters_max;
        if (hi < 0) {
            if (env.has(node.bound_key)) {
                hi = env.get(node.bound_key);
            } else if (lo >= 1) {
                hi = 1LL << word_size; // a counted loop wraps after 2^W tests
            } else {
                fail(error_kind::bounds, "missing iteration bound '" + node.bound_key + "'");
            }
            if (hi < lo)
                fail(error_kind::bounds,
                     "iteration bound '" + node.bound_key + "' below the minimum");
        }
        long long d = node.last_iter_discount;
        long long mn = sat_add(sat_mul(lo, iter.mn), exit.mn);
        if (lo >= 1)
            mn -= d;
        long long mx = sat_add(sat_mul(hi, iter.mx), exit.mx);
        if (hi >= 1)
            mx -= d;
        return {mn, mx};
    }
    }
    fail(error_kind::internal, "bad cost node");
}

} // namespace

step_bounds count_steps(const asm_program& prog, const param_env& env) {
    if (!prog.has_cost)
        fail(error_kind::internal, "program carries no cost analysis");
    if (prog.word_size != env.word_size())
        fail(error_kind::bounds, "word size differs between program and parameters");

    step_bounds sb;
    sb.p = env.max_steps();

    size_t nphases = prog.phases.empty() ? 1 : prog.phases.size();
    std::vector<span> spans;
    spans.reserve(nphases);
    for (const auto& c : prog.phase_costs)
        spans.push_back(eval(c, env, prog.word_size));
    if (spans.size() != nphases)
        fail(error_kind::internal, "cost tree does not match the phase list");

    for (const auto& s : spans) {
        sb.total_min = sat_add(sb.total_min, s.mn);
        sb.total_max = sat_add(sb.total_max, s.mx);
    }
    if (sb.total_min > sb.p)
        fail(error_kind::bounds, "even the shortest run needs " + std::to_string(sb.total_min) +
                                     " steps but the horizon is " + std::to_string(sb.p));

    long long run_min = 0, run_max = 0;
    for (size_t k = 0; k < nphases; ++k) {
        phase_window w;
        w.name = prog.phases.empty() ? "" : prog.phases[k];
        long long derived_start = std::max(1LL, sat_add(run_min, 1));
        long long derived_stop = std::min(sb.p, sat_add(run_max, spans[k].mx));
        run_min = sat_add(run_min, spans[k].mn);
        run_max = sat_add(run_max, spans[k].mx);
        w.start = derived_start;
        w.stop = k + 1 == nphases ? sb.p : derived_stop;
        if (!w.name.empty()) {
            w.start = env.get_or("phase." + w.name + ".start", w.start);
            w.stop = env.get_or("phase." + w.name + ".stop", w.stop);
        }
        sb.windows.push_back(std::move(w));
    }

    for (size_t k = 0; k < sb.windows.size(); ++k) {
        const auto& w = sb.windows[k];
        std::string tag = w.name.empty() ? "program" : "phase '" + w.name + "'";
        if (w.start < 1 || w.start > w.stop)
            fail(error_kind::bounds, "window for " + tag + " is empty");
        if (w.stop > sb.p)
            fail(error_kind::bounds, "window for " + tag + " exceeds the horizon " +
                                         std::to_string(sb.p));
        if (k == 0 && w.start != 1)
            fail(error_kind::bounds, "the first window must open at step 1");
        if (k + 1 == sb.windows.size() && w.stop != sb.p)
            fail(error_kind::bounds, "the last window must reach the horizon");
        if (k > 0 && w.start > sb.windows[k - 1].stop + 1)
            fail(error_kind::bounds, "windows for " + sb.windows[k - 1].name + " and " + w.name +
                                         " leave a gap");
    }

    sb.line_window.resize(static_cast<size_t>(prog.line_count()));
    for (int i = 0; i < prog.line_count(); ++i) {
        size_t k = prog.phases.empty() ? 0 : static_cast<size_t>(prog.line(i).phase);
        long long start = sb.windows[k].start;
        long long stop = prog.line(i).op == opcode::ret ? sb.p : sb.windows[k].stop;
        sb.line_window[static_cast<size_t>(i)] = {start, stop};
    }
    return sb;
}

} // namespace sparks
