#include "sparks/trace_point.hpp"

#include "sparks/util.hpp"

namespace sparks {

trace_point trace_to_point(const lp_build_info& info, const trace& tr) {
    if (tr.faulted)
        fail(error_kind::bounds, "trace faulted: " + tr.fault);
    if (!tr.halted)
        fail(error_kind::bounds, "trace did not halt within the horizon");
    long long h = tr.steps();
    if (h < 1)
        fail(error_kind::bounds, "trace halted before executing any line");
    if (h > info.p)
        fail(error_kind::bounds,
             "trace ran " + std::to_string(h) + " steps but the horizon is " +
                 std::to_string(info.p));

    int ret_line = tr.lines.back();
    if (info.prog->line(ret_line).op != opcode::ret)
        fail(error_kind::internal, "halted trace does not end on a return");

    trace_point pt;
    pt.p = info.p;
    pt.cells = info.mem.total;
    pt.max_aux = 0;
    for (const auto& g : info.gadgets)
        pt.max_aux = std::max(pt.max_aux, g.aux_count);

    pt.bvals.resize(static_cast<size_t>(pt.p + 1) * static_cast<size_t>(pt.cells));
    pt.active.resize(static_cast<size_t>(pt.p));
    pt.avals.assign(static_cast<size_t>(pt.p) * static_cast<size_t>(pt.max_aux), 0);

    for (long long t = 0; t <= pt.p; ++t) {
        const auto& layer = t <= h ? tr.mem[static_cast<size_t>(t)] : tr.final_mem();
        std::copy(layer.begin(), layer.end(),
                  pt.bvals.begin() + static_cast<size_t>(t) * static_cast<size_t>(pt.cells));
    }
    for (long long t = 1; t <= pt.p; ++t) {
        int line = t <= h ? tr.lines[static_cast<size_t>(t - 1)] : ret_line;
        if (!info.bounds.active_at(line, t))
            fail(error_kind::bounds,
                 "line " + std::to_string(line + 1) + " executed at step " +
                     std::to_string(t) +
                     " outside its window; widen the phase bounds");
        pt.active[static_cast<size_t>(t - 1)] = line;
    }

    std::vector<uint8_t> read_buf, write_buf, aux_buf;
    for (long long t = 1; t <= pt.p; ++t) {
        int line = pt.active[static_cast<size_t>(t - 1)];
        const gadget& g = info.gadgets[static_cast<size_t>(line)];
        if (!g.witness)
            continue;
        const uint8_t* before =
            pt.bvals.data() + static_cast<size_t>(t - 1) * static_cast<size_t>(pt.cells);
        read_buf.clear();
        for (long long c : g.read_cells)
            read_buf.push_back(before[c]);
        write_buf.assign(g.write_cells.size(), 0);
        aux_buf.assign(static_cast<size_t>(g.aux_count), 0);
        g.witness(read_buf.data(), write_buf.data(), aux_buf.data());
        const uint8_t* after =
            pt.bvals.data() + static_cast<size_t>(t) * static_cast<size_t>(pt.cells);
        for (size_t i = 0; i < g.write_cells.size(); ++i) {
            if (write_buf[i] != after[g.write_cells[i]])
                fail(error_kind::internal,
                     "witness disagrees with the interpreter at step " +
                         std::to_string(t) + ", line " + std::to_string(line + 1) +
                         ", cell " + info.mem.cell_label(g.write_cells[i]));
        }
        std::copy(aux_buf.begin(), aux_buf.end(),
                  pt.avals.begin() +
                      static_cast<size_t>(t - 1) * static_cast<size_t>(pt.max_aux));
    }
    return pt;
}

void point_check_sink::row(const lp_row& r) {
    ++rows;
    long long lhs = 0;
    for (size_t i = 0; i < r.nterms; ++i)
        lhs += r.terms[i].second * pt.value(r.terms[i].first);
    bool ok = r.s == sense::eq ? lhs == r.rhs : lhs <= r.rhs;
    if (!ok) {
        ++violations;
        if (first_violation.empty())
            first_violation = std::string(r.name) + ": lhs " + std::to_string(lhs) +
                              (r.s == sense::eq ? " != " : " > ") +
                              std::to_string(r.rhs);
    }
}

} // namespace sparks
