#include "sparks/traceviz.hpp"

#include <algorithm>
#include <ostream>

#include "sparks/util.hpp"

namespace sparks {

viz_trace trace_from_interp(const lp_build_info& info, const trace& tr) {
    if (tr.faulted)
        fail(error_kind::bounds, "cannot visualize a faulted trace: " + tr.fault);
    viz_trace v;
    v.p = info.p;
    v.lines = info.prog->line_count();
    v.bands = info.bounds.windows;
    long long h = tr.steps();
    int tail = tr.halted ? tr.lines.back() : -1;
    for (long long t = 1; t <= v.p; ++t) {
        int line = t <= h ? tr.lines[static_cast<size_t>(t - 1)] : tail;
        v.line_at.push_back(line + 1);
        v.flagged.push_back(0);
    }
    v.halt_t = tr.halted ? h : 0;
    return v;
}

viz_trace trace_from_solution(const lp_build_info& info,
                              const std::map<std::string, rat>& sol) {
    viz_trace v;
    v.p = info.p;
    v.lines = info.prog->line_count();
    v.bands = info.bounds.windows;
    const rat clean(99, 100);
    const rat rival(1, 100);
    for (long long t = 1; t <= v.p; ++t) {
        int best = -1;
        rat best_val(0);
        bool contested = false;
        for (int line = 0; line < v.lines; ++line) {
            if (!info.bounds.active_at(line, t))
                continue;
            auto it = sol.find(var_ref::step(line, t).name());
            if (it == sol.end())
                continue;
            if (best == -1 || best_val < it->second) {
                if (best != -1 && best_val > rival)
                    contested = true;
                best = line;
                best_val = it->second;
            } else if (it->second > rival) {
                contested = true;
            }
        }
        v.line_at.push_back(best + 1);
        v.flagged.push_back(best == -1 || best_val < clean || contested ? 1 : 0);
        if (v.halt_t == 0 && best >= 0 &&
            info.prog->line(best).op == opcode::ret)
            v.halt_t = t;
    }
    return v;
}

void render_csv(std::ostream& os, const viz_trace& v) {
    os << "t,line,flag\n";
    for (long long t = 1; t <= v.p; ++t)
        os << t << ',' << v.line_at[static_cast<size_t>(t - 1)] << ','
           << int(v.flagged[static_cast<size_t>(t - 1)]) << '\n';
    if (!os)
        fail(error_kind::io, "failed while writing the trace CSV");
}

void render_svg(std::ostream& os, const viz_trace& v) {
    const int sx = 6, sy = 6, mx = 40, my = 24;
    long long w = mx + (v.p + 1) * sx + 10;
    int h = my + (v.lines + 1) * sy + 10;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
       << "\" height=\"" << h << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const char* band_fill[] = {"#eef4ff", "#fff3e6", "#eaffea", "#f8eaff"};
    for (size_t i = 0; i < v.bands.size(); ++i) {
        const auto& b = v.bands[i];
        long long x0 = mx + (b.start - 1) * sx;
        long long x1 = mx + b.stop * sx;
        os << "<rect x=\"" << x0 << "\" y=\"" << my << "\" width=\"" << x1 - x0
           << "\" height=\"" << v.lines * sy << "\" fill=\""
           << band_fill[i % 4] << "\"/>\n";
        os << "<text x=\"" << x0 + 2 << "\" y=\"" << my - 8
           << "\" font-size=\"10\" font-family=\"monospace\">" << b.name
           << "</text>\n";
    }

    long long last = v.halt_t > 0 ? v.halt_t : v.p;
    if (v.halt_t > 0) {
        long long x = mx + (v.halt_t - 1) * sx + sx / 2;
        os << "<line x1=\"" << x << "\" y1=\"" << my << "\" x2=\"" << x
           << "\" y2=\"" << my + v.lines * sy
           << "\" stroke=\"#c00\" stroke-dasharray=\"3,2\"/>\n";
    }
    for (long long t = 1; t <= last; ++t) {
        int line = v.line_at[static_cast<size_t>(t - 1)];
        if (line < 1)
            continue;
        long long cx = mx + (t - 1) * sx + sx / 2;
        int cy = my + (line - 1) * sy + sy / 2;
        bool bad = v.flagged[static_cast<size_t>(t - 1)] != 0;
        os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"2\" fill=\""
           << (bad ? "#d00" : "#036") << "\"/>\n";
    }
    os << "<text x=\"2\" y=\"" << my + sy << "\" font-size=\"10\" "
          "font-family=\"monospace\">line</text>\n";
    os << "<text x=\"" << mx << "\" y=\"" << h - 2 << "\" font-size=\"10\" "
          "font-family=\"monospace\">t = 1.."
       << v.p << "</text>\n";
    os << "</svg>\n";
    if (!os)
        fail(error_kind::io, "failed while writing the trace SVG");
}

std::string diff_traces(const viz_trace& a, const viz_trace& b) {
    if (a.p != b.p)
        return "horizons differ: " + std::to_string(a.p) + " vs " +
               std::to_string(b.p);
    long long diffs = 0;
    std::string detail;
    for (long long t = 1; t <= a.p; ++t) {
        int la = a.line_at[static_cast<size_t>(t - 1)];
        int lb = b.line_at[static_cast<size_t>(t - 1)];
        if (la == lb)
            continue;
        ++diffs;
        if (diffs <= 5) {
            detail += "  t=" + std::to_string(t) + ": line " +
                      std::to_string(la) + " vs " + std::to_string(lb) + "\n";
        }
    }
    if (diffs == 0 && a.halt_t > 0 && b.halt_t > 0 && a.halt_t != b.halt_t)
        return "halt step differs: " + std::to_string(a.halt_t) + " vs " +
               std::to_string(b.halt_t);
    if (diffs == 0)
        return "";
    return std::to_string(diffs) + " steps differ\n" + detail;
}

} // namespace sparks
