#pragma once

#include "sparks/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace sparks {

// Parsed parameter file. Every plain key maps to a nonnegative integer.
// Two keys get special treatment: "d" may be a rational in [0, 1/2] and
// "output" is a comma separated list of cell or register names reported
// after a run.
struct param_env {
    std::map<std::string, long long> values;
    rat d{0, 1};
    bool has_d = false;
    std::vector<std::string> outputs;

    bool has(const std::string& key) const { return values.count(key) != 0; }

    long long get(const std::string& key) const;
    long long get_or(const std::string& key, long long fallback) const;

    long long word_size() const { return get("W"); }
    long long max_steps() const { return get("maxsteps"); }
};

// Grammar per line: `key = expr` with `#` comments. Expressions use
// + - * / and parentheses over integer literals and previously defined
// keys. Division must be exact. "W" and "maxsteps" are required.
param_env parse_params(const std::string& text);

// Evaluates one expression in the same grammar against known values.
long long eval_param_expr(std::string_view expr, const std::map<std::string, long long>& values,
                          source_pos where = {});

} // namespace sparks
