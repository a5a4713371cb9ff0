#include "sparks/solver.hpp"

#include <array>
#include <cstdio>
#include <sstream>

#include "sparks/util.hpp"

namespace sparks {

namespace {

std::string substitute(const std::string& tmpl, const std::string& lp,
                       const std::string& sol) {
    std::string out;
    for (size_t i = 0; i < tmpl.size();) {
        if (tmpl.compare(i, 4, "{lp}") == 0) {
            out += lp;
            i += 4;
        } else if (tmpl.compare(i, 5, "{sol}") == 0) {
            out += sol;
            i += 5;
        } else {
            out += tmpl[i++];
        }
    }
    return out;
}

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s)
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    out += "'";
    return out;
}

std::string tail_of(const std::string& s, size_t n) {
    if (s.size() <= n)
        return s;
    return "..." + s.substr(s.size() - n);
}

} // namespace

void invoke_solver(const std::string& cmd_template, const std::string& lp_path,
                   const std::string& sol_path, long long timeout_sec) {
    if (cmd_template.find("{lp}") == std::string::npos)
        fail(error_kind::solver, "solver command is missing the {lp} placeholder");
    std::string cmd = substitute(cmd_template, lp_path, sol_path);
    std::string full = "timeout " + std::to_string(timeout_sec) + "s sh -c " +
                       shell_quote(cmd) + " 2>&1";

    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe)
        fail(error_kind::solver, "could not launch the solver command");
    std::string output;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        output.append(buf.data(), got);
    int status = pclose(pipe);
    int code = status < 0 ? -1 : (status & 0x7f) ? 128 : (status >> 8) & 0xff;
    if (code == 124)
        fail(error_kind::solver, "solver timed out after " +
                                     std::to_string(timeout_sec) + "s");
    if (code != 0)
        fail(error_kind::solver, "solver exited with code " +
                                     std::to_string(code) + ": " +
                                     tail_of(output, 500));
}

namespace {

bool looks_like_name(const std::string& tok) {
    return !tok.empty() && !std::isdigit(static_cast<unsigned char>(tok[0])) &&
           tok[0] != '-' && tok[0] != '+' && tok[0] != '.';
}

// glpsol --output tables list variables under a "Column name" header as
//   No. Column name  St Activity ...
void parse_glpsol_table(const std::string& text, std::map<std::string, rat>& out) {
    std::istringstream in(text);
    std::string line;
    bool in_columns = false;
    while (std::getline(in, line)) {
        if (line.find("Column name") != std::string::npos) {
            in_columns = true;
            std::getline(in, line);
            continue;
        }
        if (!in_columns)
            continue;
        std::istringstream ls(line);
        std::string no, name, st, activity;
        if (!(ls >> no >> name))
            continue;
        if (no.empty() || !std::isdigit(static_cast<unsigned char>(no[0]))) {
            in_columns = false;
            continue;
        }
        if (!(ls >> st >> activity))
            continue;
        rat v;
        if (parse_rat(activity, v))
            out[name] = v;
    }
}

void parse_xml(const std::string& text, std::map<std::string, rat>& out) {
    size_t pos = 0;
    while ((pos = text.find("name=\"", pos)) != std::string::npos) {
        pos += 6;
        size_t end = text.find('"', pos);
        if (end == std::string::npos)
            break;
        std::string name = text.substr(pos, end - pos);
        size_t vpos = text.find("value=\"", end);
        if (vpos == std::string::npos)
            break;
        vpos += 7;
        size_t vend = text.find('"', vpos);
        if (vend == std::string::npos)
            break;
        rat v;
        if (parse_rat(text.substr(vpos, vend - vpos), v))
            out[name] = v;
        pos = vend;
    }
}

} // namespace

std::map<std::string, rat> parse_solution(const std::string& text) {
    std::map<std::string, rat> out;
    if (text.find("<?xml") != std::string::npos ||
        text.find("<CPLEXSolution") != std::string::npos) {
        parse_xml(text, out);
        return out;
    }
    if (text.find("Column name") != std::string::npos) {
        parse_glpsol_table(text, out);
        return out;
    }
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        size_t h = line.find('#');
        if (h != std::string::npos)
            line.erase(h);
        std::istringstream ls(line);
        std::string name, value, extra;
        if (!(ls >> name >> value) || (ls >> extra))
            continue;
        if (!looks_like_name(name))
            continue;
        rat v;
        if (parse_rat(value, v))
            out[name] = v;
    }
    return out;
}

} // namespace sparks
