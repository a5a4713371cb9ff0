#pragma once

#include "sparks/interp.hpp"
#include "sparks/lpgen.hpp"

namespace sparks {

// Dense 0/1 point of the LP induced by a halted execution trace: memory
// layers from the snapshots (frozen past the halt), one control flag per
// step with the return line absorbing the tail, and auxiliary bits filled
// from the gadget witnesses. Auxiliaries of inactive lines are zero.
struct trace_point {
    long long p = 0;
    long long cells = 0;
    int max_aux = 0;
    std::vector<uint8_t> bvals; // (p + 1) layers of `cells`
    std::vector<int> active;    // 0-based line at step t, index t - 1
    std::vector<uint8_t> avals; // active line's aux bits, stride max_aux

    uint8_t value(const var_ref& v) const {
        switch (v.k) {
        case var_ref::kind::B:
            return bvals[static_cast<size_t>(v.t) * static_cast<size_t>(cells) +
                         static_cast<size_t>(v.a)];
        case var_ref::kind::S:
            return active[static_cast<size_t>(v.t - 1)] == v.a ? 1 : 0;
        case var_ref::kind::A:
            if (active[static_cast<size_t>(v.t - 1)] != v.a)
                return 0;
            return avals[static_cast<size_t>(v.t - 1) * static_cast<size_t>(max_aux) +
                         static_cast<size_t>(v.aux)];
        }
        return 0;
    }
};

// Fails when the trace faulted, did not halt, overran the horizon, or ran a
// line outside its window; cross-checks every gadget witness against the
// interpreter's snapshots along the way.
trace_point trace_to_point(const lp_build_info& info, const trace& tr);

// Streams rows against the point in 64-bit arithmetic (exact: coefficients
// are small integers and values are bits).
struct point_check_sink : row_sink {
    const trace_point& pt;
    long long rows = 0;
    long long violations = 0;
    std::string first_violation;

    explicit point_check_sink(const trace_point& point) : pt(point) {}
    void row(const lp_row& r) override;
};

} // namespace sparks
