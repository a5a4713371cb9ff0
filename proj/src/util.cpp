#include "sparks/util.hpp"

#include "sparks/diagnostics.hpp"
#include "sparks/rational.hpp"

#include <cctype>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace sparks {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(error_kind::io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        fail(error_kind::io, "read failed for " + path);
    return ss.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty())
        dir = ".";
    std::error_code ec;
    fs::create_directories(dir, ec);
    fs::path tmp = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(error_kind::io, "cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            fail(error_kind::io, "write failed for " + tmp.string());
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        fail(error_kind::io, "rename to " + path + " failed: " + ec.message());
    }
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
            ++j;
        if (j > i)
            out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string> split_on(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

std::string_view trim(std::string_view s) {
    size_t a = 0;
    size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

bool is_ident(std::string_view s) {
    if (s.empty())
        return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

bool parse_int(std::string_view s, long long& out) {
    if (s.empty())
        return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool parse_rat(std::string_view s, rat& out) {
    s = trim(s);
    if (s.empty())
        return false;

    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        long long n = 0, d = 0;
        if (!parse_int(trim(s.substr(0, slash)), n) || !parse_int(trim(s.substr(slash + 1)), d) || d == 0)
            return false;
        out = rat(n, d);
        return true;
    }

    bool neg = false;
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }

    __int128 mant = 0;
    long long frac_digits = 0;
    long long exp10 = 0;
    bool any_digit = false;
    bool seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            if (mant > (static_cast<__int128>(INT64_MAX) - 9) / 10)
                return false;
            mant = mant * 10 + (c - '0');
            if (seen_dot)
                ++frac_digits;
            any_digit = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && any_digit) {
            if (!parse_int(s.substr(i + 1), exp10))
                return false;
            if (exp10 > 18 || exp10 < -18)
                return false;
            break;
        } else {
            return false;
        }
    }
    if (!any_digit)
        return false;

    long long shift = exp10 - frac_digits;
    __int128 num = neg ? -mant : mant;
    __int128 den = 1;
    while (shift > 0) {
        num *= 10;
        --shift;
        if (num > INT64_MAX || num < INT64_MIN)
            return false;
    }
    while (shift < 0) {
        den *= 10;
        ++shift;
        if (den > INT64_MAX)
            return false;
    }
    out = rat::make(num, den);
    return true;
}

} // namespace sparks
