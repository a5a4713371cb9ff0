#include "sparks/instance.hpp"

#include "sparks/diagnostics.hpp"
#include "sparks/util.hpp"

#include <cctype>

namespace sparks {

std::vector<uint8_t> instance_assignment::image(const memory_map& mem) const {
    std::vector<uint8_t> img(static_cast<size_t>(mem.total), 0);
    for (const auto& [name, bits] : values) {
        const region& r = mem.of(name);
        if (static_cast<long long>(bits.size()) != r.cells)
            fail(error_kind::internal, "instance shape mismatch for '" + name + "'");
        for (size_t i = 0; i < bits.size(); ++i)
            img[static_cast<size_t>(r.base) + i] = bits[i];
    }
    return img;
}

std::vector<long long> instance_assignment::input_cells(const memory_map& mem) const {
    std::vector<long long> cells;
    for (const auto& r : mem.regions)
        if (r.is_input)
            for (long long c = r.base; c < r.base + r.cells; ++c)
                cells.push_back(c);
    return cells;
}

std::vector<uint8_t> instance_assignment::input_bits(const memory_map& mem) const {
    std::vector<uint8_t> img = image(mem);
    std::vector<uint8_t> out;
    for (long long c : input_cells(mem))
        out.push_back(img[static_cast<size_t>(c)]);
    return out;
}

namespace {

struct tok_stream {
    std::vector<std::pair<std::string, source_pos>> toks;
    size_t pos = 0;

    const std::string& peek() const {
        static const std::string empty;
        return pos < toks.size() ? toks[pos].first : empty;
    }
    source_pos where() const {
        return pos < toks.size() ? toks[pos].second : source_pos{};
    }
    std::string next() {
        if (pos >= toks.size())
            fail(error_kind::parse, "unexpected end of instance file");
        return toks[pos++].first;
    }
    void expect(const std::string& s) {
        source_pos w = where();
        if (next() != s)
            fail(error_kind::parse, "expected '" + s + "' in instance file", w);
    }
    bool done() const { return pos >= toks.size(); }
};

tok_stream lex(const std::string& text) {
    tok_stream ts;
    int line = 1;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                ++i;
            continue;
        }
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        source_pos w{line, 0};
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            ts.toks.emplace_back(text.substr(i, j - i), w);
            i = j;
            continue;
        }
        if (c == '<' && i + 1 < text.size() && text[i + 1] == '-') {
            ts.toks.emplace_back("<-", w);
            i += 2;
            continue;
        }
        static const std::string singles = "{}[],";
        if (singles.find(c) != std::string::npos) {
            ts.toks.emplace_back(std::string(1, c), w);
            ++i;
            continue;
        }
        fail(error_kind::parse, std::string("unexpected character '") + c + "' in instance file",
             w);
    }
    return ts;
}

long long num(tok_stream& ts) {
    source_pos w = ts.where();
    long long v;
    if (!parse_int(ts.next(), v) || v < 0)
        fail(error_kind::parse, "expected a number in instance file", w);
    return v;
}

uint8_t bit(tok_stream& ts) {
    source_pos w = ts.where();
    long long v = num(ts);
    if (v > 1)
        fail(error_kind::parse, "expected 0 or 1", w);
    return static_cast<uint8_t>(v);
}

std::vector<uint8_t> bit_list(tok_stream& ts, long long want) {
    std::vector<uint8_t> out;
    ts.expect("{");
    for (;;) {
        out.push_back(bit(ts));
        if (ts.peek() == ",") {
            ts.next();
            continue;
        }
        break;
    }
    ts.expect("}");
    if (static_cast<long long>(out.size()) != want)
        fail(error_kind::parse, "expected " + std::to_string(want) + " elements, got " +
                                    std::to_string(out.size()));
    return out;
}

} // namespace

instance_assignment parse_instance(const std::string& text, const sparks_ast& ast) {
    instance_assignment ia;
    tok_stream ts = lex(text);
    long long w_bits = ast.word_size;

    while (!ts.done()) {
        source_pos w = ts.where();
        std::string head = ts.next();

        if (head == "array" || head == "matrix") {
            std::string name = ts.next();
            const decl* d = find_decl(ast, name);
            if (!d || !d->is_input)
                fail(error_kind::parse, "'" + name + "' is not a declared input", w);
            if (ia.values.count(name))
                fail(error_kind::parse, "duplicate assignment to '" + name + "'", w);
            ts.expect("[");
            long long d1 = num(ts);
            long long d2 = 1;
            if (head == "matrix") {
                ts.expect(",");
                d2 = num(ts);
            }
            ts.expect("]");
            bool shape_ok = head == "array" ? (d->k == decl::kind::array1d && d->dim1 == d1)
                                            : (d->k == decl::kind::matrix && d->dim1 == d1 &&
                                               d->dim2 == d2);
            if (!shape_ok)
                fail(error_kind::parse, "shape mismatch for '" + name + "'", w);
            ts.expect("<-");
            if (head == "array") {
                ia.values[name] = bit_list(ts, d1);
            } else {
                std::vector<uint8_t> bits;
                ts.expect("{");
                for (long long r = 0; r < d1; ++r) {
                    auto row = bit_list(ts, d2);
                    bits.insert(bits.end(), row.begin(), row.end());
                    if (ts.peek() == ",")
                        ts.next();
                }
                ts.expect("}");
                ia.values[name] = std::move(bits);
            }
            continue;
        }

        const decl* d = find_decl(ast, head);
        if (!d || !d->is_input)
            fail(error_kind::parse, "'" + head + "' is not a declared input", w);
        if (d->k != decl::kind::scalar_bool && d->k != decl::kind::scalar_int)
            fail(error_kind::parse, "'" + head + "' needs an array or matrix assignment", w);
        if (ia.values.count(head))
            fail(error_kind::parse, "duplicate assignment to '" + head + "'", w);
        ts.expect("<-");
        long long v = num(ts);
        if (d->k == decl::kind::scalar_bool) {
            if (v > 1)
                fail(error_kind::parse, "bool input '" + head + "' must be 0 or 1", w);
            ia.values[head] = {static_cast<uint8_t>(v)};
        } else {
            if (v >= (1LL << w_bits))
                fail(error_kind::parse, "int input '" + head + "' exceeds " +
                                            std::to_string(w_bits) + " bits", w);
            std::vector<uint8_t> bits;
            for (long long b = 0; b < w_bits; ++b)
                bits.push_back(static_cast<uint8_t>((v >> b) & 1));
            ia.values[head] = std::move(bits);
        }
    }
    return ia;
}

} // namespace sparks
