#include "sparks/lp_write.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>

#include "sparks/util.hpp"

namespace sparks {

namespace {

void append_ll(std::string& s, long long v) {
    char buf[24];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    s.append(buf, res.ptr);
}

// Exact decimal when the denominator is 2^a * 5^b, otherwise a shortest
// round-trip double; solvers read the objective as floating point anyway.
std::string coef_string(const rat& r) {
    long long den = r.den;
    long long pow10 = 1;
    while (den % 2 == 0 && pow10 <= 100000000000000000LL / 10) {
        den /= 2;
        pow10 *= 10;
    }
    while (den % 5 == 0 && pow10 <= 100000000000000000LL / 10) {
        den /= 5;
        pow10 *= 10;
    }
    if (den == 1 && r.den <= pow10 && pow10 % r.den == 0) {
        long long scale = pow10 / r.den;
        long long num = r.num < 0 ? -r.num : r.num;
        std::string digits = std::to_string(num * scale);
        std::string out = r.num < 0 ? "-" : "";
        if (digits.size() <= std::to_string(pow10).size() - 1)
            digits.insert(0, std::to_string(pow10).size() - 1 - digits.size(), '0');
        size_t point = digits.size() - (std::to_string(pow10).size() - 1);
        out += digits.substr(0, point);
        if (out == "-" || out.empty())
            out += "0";
        std::string frac = digits.substr(point);
        while (!frac.empty() && frac.back() == '0')
            frac.pop_back();
        if (!frac.empty())
            out += "." + frac;
        return out;
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", r.to_double());
    return buf;
}

struct text_row_sink : row_sink {
    std::ostream& os;
    lp_stats& st;
    std::string buf;

    text_row_sink(std::ostream& out, lp_stats& stats) : os(out), st(stats) {}

    void row(const lp_row& r) override {
        ++st.rows;
        buf.assign(" ");
        buf.append(r.name);
        buf.append(":");
        for (size_t i = 0; i < r.nterms; ++i) {
            long long c = r.terms[i].second;
            buf.append(c < 0 ? " - " : " + ");
            long long mag = c < 0 ? -c : c;
            if (mag != 1) {
                append_ll(buf, mag);
                buf.push_back(' ');
            }
            buf.append(r.terms[i].first.name());
            ++st.nonzeros;
        }
        buf.append(r.s == sense::eq ? " = " : " <= ");
        append_ll(buf, r.rhs);
        buf.push_back('\n');
        os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
};

std::string objective_line(const lp_objective& obj, const var_ref& fallback) {
    std::string line = " obj:";
    bool any = false;
    for (const auto& [v, c] : obj.input_terms) {
        line.append(c < 0 ? " - " : " + ");
        long long mag = c < 0 ? -c : c;
        if (mag != 1) {
            append_ll(line, mag);
            line.push_back(' ');
        }
        line.append(v.name());
        any = true;
    }
    if (!(obj.d == rat(0))) {
        line.append(obj.d < rat(0) ? " - " : " + ");
        rat mag = obj.d < rat(0) ? rat(0) - obj.d : obj.d;
        line.append(coef_string(mag));
        line.push_back(' ');
        line.append(obj.output.name());
        any = true;
    }
    if (obj.constant != 0) {
        line.append(obj.constant < 0 ? " - " : " + ");
        append_ll(line, obj.constant < 0 ? -obj.constant : obj.constant);
        any = true;
    }
    if (!any) {
        line.append(" 0 ");
        line.append(fallback.name());
    }
    return line;
}

} // namespace

lp_stats write_lp_text(std::ostream& os, const lp_build_info& info,
                       const lp_options& opt, const lp_objective& obj) {
    lp_stats st;
    std::vector<var_ref> vars = enumerate_vars(info);
    st.cols = static_cast<long long>(vars.size());
    if (vars.empty())
        fail(error_kind::internal, "model has no variables");

    os << "Maximize\n" << objective_line(obj, vars.front()) << "\n";
    os << "Subject To\n";
    text_row_sink sink(os, st);
    emit_lp_rows(info, opt, sink);
    os << "Bounds\n";
    std::string buf;
    for (const auto& v : vars) {
        buf.assign(" 0 <= ");
        buf.append(v.name());
        buf.append(" <= 1\n");
        os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    os << "End\n";
    if (!os)
        fail(error_kind::io, "failed while writing the LP text");
    return st;
}

void write_names(std::ostream& os, const lp_build_info& info) {
    os << "# variable\tmeaning\n";
    for (const auto& v : enumerate_vars(info)) {
        os << v.name() << '\t';
        switch (v.k) {
        case var_ref::kind::B:
            os << info.mem.cell_label(v.a) << " at t=" << v.t;
            break;
        case var_ref::kind::S:
            os << "line " << v.a + 1 << " runs at t=" << v.t;
            break;
        case var_ref::kind::A:
            os << "line " << v.a + 1 << " aux " << v.aux << " at t=" << v.t;
            break;
        }
        os << '\n';
    }
    if (!os)
        fail(error_kind::io, "failed while writing the names sidecar");
}

lp_stats write_mps(std::ostream& os, const lp_build_info& info,
                   const lp_options& opt, const lp_objective& obj) {
    lp_model m = materialize_lp(info, opt);
    lp_stats st;
    st.rows = static_cast<long long>(m.rows.size());
    st.cols = static_cast<long long>(m.var_count());

    std::vector<std::vector<std::pair<int, long long>>> cols(
        static_cast<size_t>(m.var_count()));
    for (size_t r = 0; r < m.rows.size(); ++r)
        for (const auto& [var, coef] : m.rows[r].terms) {
            cols[static_cast<size_t>(var)].push_back(
                {static_cast<int>(r), coef});
            ++st.nonzeros;
        }

    std::vector<rat> obj_coef(static_cast<size_t>(m.var_count()), rat(0));
    for (const auto& [v, c] : obj.input_terms)
        obj_coef[static_cast<size_t>(m.var_id(v))] += rat(c);
    if (!(obj.d == rat(0)))
        obj_coef[static_cast<size_t>(m.var_id(obj.output))] += obj.d;

    os << "NAME          MODEL\n";
    os << "OBJSENSE\n    MAX\n";
    os << "ROWS\n N  obj\n";
    for (const auto& r : m.rows)
        os << (r.s == sense::eq ? " E  " : " L  ") << r.name << "\n";
    os << "COLUMNS\n";
    for (size_t c = 0; c < cols.size(); ++c) {
        const std::string& vn = m.var_names[c];
        if (!(obj_coef[c] == rat(0)))
            os << "    " << vn << "  obj  " << coef_string(obj_coef[c]) << "\n";
        for (const auto& [r, coef] : cols[c])
            os << "    " << vn << "  " << m.rows[static_cast<size_t>(r)].name
               << "  " << coef << "\n";
    }
    os << "RHS\n";
    if (obj.constant != 0)
        os << "    rhs  obj  " << -obj.constant << "\n";
    for (const auto& r : m.rows)
        if (r.rhs != 0)
            os << "    rhs  " << r.name << "  " << r.rhs << "\n";
    os << "BOUNDS\n";
    for (const auto& vn : m.var_names)
        os << " UP bnd  " << vn << "  1\n";
    os << "ENDATA\n";
    if (!os)
        fail(error_kind::io, "failed while writing the MPS text");
    return st;
}

} // namespace sparks
