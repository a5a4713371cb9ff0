#pragma once

#include <stdexcept>
#include <string>

namespace sparks {

struct source_pos {
    int line = 0; // 1-based, 0 means unknown
    int col = 0;
};

enum class error_kind {
    io,
    parse,
    bounds,
    solver,
    verify,
    internal,
};

inline const char* error_kind_name(error_kind k) {
    switch (k) {
    case error_kind::io: return "io";
    case error_kind::parse: return "parse";
    case error_kind::bounds: return "bounds";
    case error_kind::solver: return "solver";
    case error_kind::verify: return "verify";
    case error_kind::internal: return "internal";
    }
    return "unknown";
}

class toolchain_error : public std::runtime_error {
public:
    toolchain_error(error_kind kind, const std::string& msg, source_pos pos = {})
        : std::runtime_error(format(kind, msg, pos)), kind_(kind), pos_(pos) {}

    error_kind kind() const { return kind_; }
    source_pos pos() const { return pos_; }

private:
    static std::string format(error_kind kind, const std::string& msg, source_pos pos) {
        std::string s(error_kind_name(kind));
        s += " error";
        if (pos.line > 0) {
            s += " at line ";
            s += std::to_string(pos.line);
            if (pos.col > 0) {
                s += ", col ";
                s += std::to_string(pos.col);
            }
        }
        s += ": ";
        s += msg;
        return s;
    }

    error_kind kind_;
    source_pos pos_;
};

[[noreturn]] inline void fail(error_kind kind, const std::string& msg, source_pos pos = {}) {
    throw toolchain_error(kind, msg, pos);
}

} // namespace sparks
