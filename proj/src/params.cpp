#include "sparks/params.hpp"

#include "sparks/diagnostics.hpp"
#include "sparks/util.hpp"

#include <cctype>

namespace sparks {
namespace {

struct expr_parser {
    std::string_view s;
    size_t pos = 0;
    const std::map<std::string, long long>& env;
    source_pos where;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void bad(const std::string& msg) { fail(error_kind::parse, msg, where); }

    __int128 parse_expr() {
        __int128 v = parse_term();
        for (;;) {
            if (eat('+'))
                v += parse_term();
            else if (eat('-'))
                v -= parse_term();
            else
                return v;
        }
    }

    __int128 parse_term() {
        __int128 v = parse_atom();
        for (;;) {
            if (eat('*')) {
                v *= parse_atom();
            } else if (eat('/')) {
                __int128 d = parse_atom();
                if (d == 0)
                    bad("division by zero in parameter expression");
                if (v % d != 0)
                    bad("non-integer division in parameter expression");
                v /= d;
            } else {
                return v;
            }
        }
    }

    __int128 parse_atom() {
        skip_ws();
        if (eat('(')) {
            __int128 v = parse_expr();
            if (!eat(')'))
                bad("missing ')' in parameter expression");
            return v;
        }
        if (eat('-'))
            return -parse_atom();
        if (pos >= s.size())
            bad("unexpected end of parameter expression");
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            __int128 v = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                v = v * 10 + (s[pos] - '0');
                if (v > static_cast<__int128>(INT64_MAX) * 1000)
                    bad("parameter literal too large");
                ++pos;
            }
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '.'))
                ++pos;
            std::string name(s.substr(start, pos - start));
            auto it = env.find(name);
            if (it == env.end())
                bad("reference to undefined parameter '" + name + "'");
            return it->second;
        }
        bad(std::string("unexpected character '") + c + "' in parameter expression");
    }

    __int128 run() {
        __int128 v = parse_expr();
        skip_ws();
        if (pos != s.size())
            bad("trailing input in parameter expression");
        return v;
    }
};

long long eval_int_expr(std::string_view text, const std::map<std::string, long long>& env, source_pos where) {
    expr_parser p{text, 0, env, where};
    __int128 v = p.run();
    if (v > INT64_MAX || v < INT64_MIN)
        fail(error_kind::parse, "parameter expression overflows 64 bits", where);
    return static_cast<long long>(v);
}

} // namespace

long long eval_param_expr(std::string_view expr, const std::map<std::string, long long>& values,
                          source_pos where) {
    return eval_int_expr(expr, values, where);
}

long long param_env::get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end())
        fail(error_kind::parse, "missing required parameter '" + key + "'");
    return it->second;
}

long long param_env::get_or(const std::string& key, long long fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

param_env parse_params(const std::string& text) {
    param_env env;
    int lineno = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string::npos)
            end = text.size();
        std::string_view line(text.data() + start, end - start);
        start = end + 1;
        ++lineno;
        source_pos where{lineno, 0};

        auto hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(error_kind::parse, "expected 'key = value'", where);
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(error_kind::parse, "empty parameter name", where);
        for (char c : key)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.')
                fail(error_kind::parse, "invalid parameter name '" + key + "'", where);
        if (env.values.count(key) || (key == "d" && env.has_d))
            fail(error_kind::parse, "duplicate parameter '" + key + "'", where);

        if (key == "d") {
            rat r;
            if (!parse_rat(value, r))
                fail(error_kind::parse, "invalid rational for 'd'", where);
            if (r < rat(0) || r > rat(1, 2))
                fail(error_kind::parse, "'d' must lie in [0, 1/2]", where);
            env.d = r;
            env.has_d = true;
            continue;
        }
        if (key == "output") {
            for (auto& name : split_on(value, ',')) {
                if (name.empty() || !is_ident(name))
                    fail(error_kind::parse, "invalid name in output list", where);
                env.outputs.push_back(name);
            }
            continue;
        }

        long long v = eval_int_expr(value, env.values, where);
        if (v < 0)
            fail(error_kind::parse, "parameter '" + key + "' is negative", where);
        env.values[key] = v;
    }

    if (!env.has("W"))
        fail(error_kind::parse, "missing required parameter 'W'");
    if (!env.has("maxsteps"))
        fail(error_kind::parse, "missing required parameter 'maxsteps'");
    if (env.word_size() < 1 || env.word_size() > 62)
        fail(error_kind::parse, "'W' must lie in [1, 62]");
    if (env.max_steps() < 1)
        fail(error_kind::parse, "'maxsteps' must be at least 1");
    return env;
}

} // namespace sparks
