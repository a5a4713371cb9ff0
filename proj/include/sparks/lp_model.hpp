#pragma once

#include "sparks/diagnostics.hpp"
#include "sparks/rational.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace sparks {

// One LP variable. B: memory cell `a` at time `t`. S: control flag of line
// `a` (0-based) at time `t`. A: auxiliary bit `k` of line `a` at time `t`.
// All variables live in [0, 1].
struct var_ref {
    enum class kind : uint8_t { B, S, A };
    kind k = kind::B;
    int32_t a = 0;
    int32_t t = 0;
    int32_t aux = 0;

    static var_ref mem(long long cell, long long t) {
        return {kind::B, static_cast<int32_t>(cell), static_cast<int32_t>(t), 0};
    }
    static var_ref step(int line, long long t) {
        return {kind::S, line, static_cast<int32_t>(t), 0};
    }
    static var_ref auxiliary(int line, long long t, int k) {
        return {kind::A, line, static_cast<int32_t>(t), static_cast<int32_t>(k)};
    }

    uint64_t key() const {
        return (static_cast<uint64_t>(k) << 62) | (static_cast<uint64_t>(a) << 38) |
               (static_cast<uint64_t>(t) << 16) | static_cast<uint64_t>(aux);
    }
    friend bool operator==(const var_ref& x, const var_ref& y) { return x.key() == y.key(); }

    // External names use 1-based line numbers.
    std::string name() const {
        switch (k) {
        case kind::B: return "B_" + std::to_string(a) + "_" + std::to_string(t);
        case kind::S: return "S_" + std::to_string(a + 1) + "_" + std::to_string(t);
        case kind::A:
            return "A_" + std::to_string(a + 1) + "_" + std::to_string(t) + "_" +
                   std::to_string(aux);
        }
        return "";
    }
};

enum class sense : uint8_t { le, eq };

struct lp_row {
    std::string_view name;
    sense s = sense::le;
    long long rhs = 0;
    const std::pair<var_ref, long long>* terms = nullptr;
    size_t nterms = 0;
};

struct row_sink {
    virtual void row(const lp_row& r) = 0;
    virtual ~row_sink() = default;
};

// Fully materialized model, for small horizons and for the verifier.
struct lp_model {
    struct mrow {
        std::string name;
        sense s = sense::le;
        long long rhs = 0;
        std::vector<std::pair<int, long long>> terms;
    };

    long long p = 0;
    std::vector<std::string> var_names;
    std::vector<var_ref> var_refs;
    std::unordered_map<uint64_t, int> by_key;
    std::vector<mrow> rows;

    int add_var(const var_ref& v) {
        auto [it, fresh] = by_key.try_emplace(v.key(), static_cast<int>(var_refs.size()));
        if (fresh) {
            var_refs.push_back(v);
            var_names.push_back(v.name());
        }
        return it->second;
    }
    int var_id(const var_ref& v) const {
        auto it = by_key.find(v.key());
        if (it == by_key.end())
            fail(error_kind::internal, "unknown variable " + v.name());
        return it->second;
    }
    const int* find_var(const var_ref& v) const {
        auto it = by_key.find(v.key());
        return it == by_key.end() ? nullptr : &it->second;
    }
    size_t var_count() const { return var_refs.size(); }
};

} // namespace sparks
