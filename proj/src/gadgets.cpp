#include "sparks/gadgets.hpp"

#include "sparks/diagnostics.hpp"

#include <map>

namespace sparks {
namespace {

using slot = gadget::term::slot;

// Linear expression over gadget slots plus a constant.
struct lin {
    std::vector<gadget::term> terms;
    long long c = 0;
};

lin& operator+=(lin& a, const lin& b) {
    a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
    a.c += b.c;
    return a;
}
lin operator+(lin a, const lin& b) {
    a += b;
    return a;
}
lin operator-(lin a, const lin& b) {
    for (const auto& t : b.terms)
        a.terms.push_back({t.s, t.idx, -t.coef});
    a.c -= b.c;
    return a;
}
lin lconst(long long v) {
    lin l;
    l.c = v;
    return l;
}

struct builder {
    const memory_map& mem;
    long long w;
    gadget g;
    std::map<long long, int> read_ix;
    std::map<long long, int> write_ix;

    builder(const memory_map& m) : mem(m), w(m.word_size) {}

    lin control() {
        lin l;
        l.terms.push_back({slot::control, 0, 1});
        return l;
    }
    lin sterm(slot s, int idx) {
        lin l;
        l.terms.push_back({s, idx, 1});
        return l;
    }

    int read_slot(long long cell) {
        auto [it, fresh] = read_ix.try_emplace(cell, static_cast<int>(g.read_cells.size()));
        if (fresh)
            g.read_cells.push_back(cell);
        return it->second;
    }
    int write_slot(long long cell) {
        auto [it, fresh] = write_ix.try_emplace(cell, static_cast<int>(g.write_cells.size()));
        if (fresh)
            g.write_cells.push_back(cell);
        return it->second;
    }
    lin read(long long cell) { return sterm(slot::read, read_slot(cell)); }
    lin write(long long cell) { return sterm(slot::write, write_slot(cell)); }
    lin aux(int k) {
        if (k >= g.aux_count)
            g.aux_count = k + 1;
        return sterm(slot::aux, k);
    }

    // Bool operand: a read slot or a constant.
    lin bit(const asm_arg& a) {
        if (a.is_lit())
            return lconst(a.value & 1);
        return read(mem.scalar_cell(a.name));
    }

    // Word operand: per-bit lins, least significant first.
    std::vector<lin> word(const asm_arg& a) {
        std::vector<lin> out;
        for (long long b = 0; b < w; ++b) {
            if (a.is_lit())
                out.push_back(lconst((a.value >> b) & 1));
            else
                out.push_back(read(mem.int_bit(a.name, b)));
        }
        return out;
    }

    // Witness-side accessors; registered before row emission so the slot
    // order matches.
    std::function<uint8_t(const uint8_t*)> bit_get(const asm_arg& a) {
        if (a.is_lit()) {
            uint8_t v = static_cast<uint8_t>(a.value & 1);
            return [v](const uint8_t*) { return v; };
        }
        int s = read_slot(mem.scalar_cell(a.name));
        return [s](const uint8_t* rd) { return rd[s]; };
    }
    std::function<uint64_t(const uint8_t*)> word_get(const asm_arg& a) {
        if (a.is_lit()) {
            uint64_t v = static_cast<uint64_t>(a.value);
            return [v](const uint8_t*) { return v; };
        }
        std::vector<int> slots;
        for (long long b = 0; b < w; ++b)
            slots.push_back(read_slot(mem.int_bit(a.name, b)));
        return [slots](const uint8_t* rd) {
            uint64_t v = 0;
            for (size_t b = 0; b < slots.size(); ++b)
                v |= static_cast<uint64_t>(rd[slots[b]] & 1) << b;
            return v;
        };
    }

    void le(lin e, long long rhs) {
        // combine coefficients per slot
        std::map<std::pair<int, int>, long long> comb;
        for (const auto& t : e.terms)
            comb[{static_cast<int>(t.s), t.idx}] += t.coef;
        gadget::row r;
        r.rhs = rhs - e.c;
        long long box_max = 0;
        for (const auto& [key, coef] : comb) {
            if (coef == 0)
                continue;
            r.terms.push_back({static_cast<slot>(key.first), key.second, coef});
            if (coef > 0)
                box_max += coef;
        }
        if (box_max <= r.rhs)
            return; // holds everywhere on the box
        if (r.terms.empty())
            fail(error_kind::internal, "constant infeasible gadget row");
        g.rows.push_back(std::move(r));
    }

    // Controlled forbidden corner: with the control flag up, the given 0/1
    // corner of `vars` is cut off; with it down the row holds on the box.
    void forbid(const std::vector<lin>& vars, uint64_t corner) {
        lin row = control();
        long long rhs = 0;
        for (size_t j = 0; j < vars.size(); ++j) {
            if ((corner >> j) & 1) {
                row += vars[j];
                rhs += 1;
            } else {
                row = row - vars[j];
            }
        }
        le(std::move(row), rhs);
    }

    // Forbids every corner where `out` differs from f(inputs).
    void forbid_wrong(const std::vector<lin>& ins, const lin& out,
                      const std::function<int(uint64_t)>& f) {
        std::vector<lin> vars = ins;
        vars.push_back(out);
        for (uint64_t m = 0; m < (1ULL << ins.size()); ++m) {
            uint64_t wrong = m | (static_cast<uint64_t>(1 - (f(m) & 1)) << ins.size());
            forbid(vars, wrong);
        }
    }

    // Count of index bits agreeing with pattern m; equals w exactly when the
    // index word equals m.
    lin match(const std::vector<lin>& idx, uint64_t m) {
        lin l;
        for (long long b = 0; b < w; ++b) {
            if ((m >> b) & 1)
                l += idx[static_cast<size_t>(b)];
            else
                l += lconst(1) - idx[static_cast<size_t>(b)];
        }
        return l;
    }
};

uint64_t mask_of(long long w) { return w >= 64 ? ~0ULL : (1ULL << w) - 1; }

void build_bool_binop(builder& b, const instr& ins) {
    lin x = b.bit(ins.args[1]);
    lin y = b.bit(ins.args[2]);
    auto fx = b.bit_get(ins.args[1]);
    auto fy = b.bit_get(ins.args[2]);
    lin z = b.write(b.mem.scalar_cell(ins.args[0].name));
    lin S = b.control();

    switch (ins.op) {
    case opcode::band:
        b.le(S + z - x, 1);
        b.le(S + z - y, 1);
        b.le(S + x + y - z, 2);
        b.g.witness = [fx, fy](const uint8_t* rd, uint8_t* wr, uint8_t*) {
            wr[0] = fx(rd) & fy(rd);
        };
        break;
    case opcode::bor:
        b.le(S + x - z, 1);
        b.le(S + y - z, 1);
        b.le(S + z - x - y, 1);
        b.g.witness = [fx, fy](const uint8_t* rd, uint8_t* wr, uint8_t*) {
            wr[0] = fx(rd) | fy(rd);
        };
        break;
    case opcode::bxor:
        b.le(S + x - y - z, 1);
        b.le(S - x - y + z, 1);
        b.le(S - x + y - z, 1);
        b.le(S + x + y + z, 3);
        b.g.witness = [fx, fy](const uint8_t* rd, uint8_t* wr, uint8_t*) {
            wr[0] = fx(rd) ^ fy(rd);
        };
        break;
    case opcode::beq:
        b.forbid_wrong({x, y}, z, [](uint64_t m) {
            return ((m & 1) == ((m >> 1) & 1)) ? 1 : 0;
        });
        b.g.witness = [fx, fy](const uint8_t* rd, uint8_t* wr, uint8_t*) {
            wr[0] = fx(rd) == fy(rd) ? 1 : 0;
        };
        break;
    default:
        fail(error_kind::internal, "not a bool binop");
    }
}

void build_eqw(builder& b, const instr& ins) {
    auto x = b.word(ins.args[1]);
    auto y = b.word(ins.args[2]);
    auto fx = b.word_get(ins.args[1]);
    auto fy = b.word_get(ins.args[2]);
    lin z = b.write(b.mem.scalar_cell(ins.args[0].name));
    lin S = b.control();
    long long w = b.w;

    // aux bit per position: the xor of the two operand bits; the output is
    // their nor.
    lin dsum;
    for (long long bbit = 0; bbit < w; ++bbit) {
        lin d = b.aux(static_cast<int>(bbit));
        lin xb = x[static_cast<size_t>(bbit)], yb = y[static_cast<size_t>(bbit)];
        b.le(S + xb - yb - d, 1);
        b.le(S - xb + yb - d, 1);
        b.le(S - xb - yb + d, 1);
        b.le(S + xb + yb + d, 3);
        b.le(S + z + d, 2);
        dsum += d;
    }
    b.le(S - z - dsum, 0);
    b.g.witness = [fx, fy, w](const uint8_t* rd, uint8_t* wr, uint8_t* ax) {
        uint64_t xv = fx(rd), yv = fy(rd);
        for (long long bbit = 0; bbit < w; ++bbit)
            ax[bbit] = static_cast<uint8_t>(((xv ^ yv) >> bbit) & 1);
        wr[0] = xv == yv ? 1 : 0;
    };
}

void build_ltw(builder& b, const instr& ins) {
    auto x = b.word(ins.args[1]);
    auto y = b.word(ins.args[2]);
    auto fx = b.word_get(ins.args[1]);
    auto fy = b.word_get(ins.args[2]);
    lin z = b.write(b.mem.scalar_cell(ins.args[0].name));
    long long w = b.w;

    auto less_bit = [](uint64_t m) { return ((m & 1) == 0 && ((m >> 1) & 1) == 1) ? 1 : 0; };
    auto chain_bit = [](uint64_t m) {
        int xb = m & 1, yb = (m >> 1) & 1, prev = (m >> 2) & 1;
        if (xb == yb)
            return prev;
        return xb == 0 && yb == 1 ? 1 : 0;
    };

    lin prev = w == 1 ? z : b.aux(0);
    b.forbid_wrong({x[0], y[0]}, prev, less_bit);
    for (long long bbit = 1; bbit < w; ++bbit) {
        lin cur = bbit == w - 1 ? z : b.aux(static_cast<int>(bbit));
        b.forbid_wrong({x[static_cast<size_t>(bbit)], y[static_cast<size_t>(bbit)], prev}, cur,
                       chain_bit);
        prev = cur;
    }
    b.g.witness = [fx, fy, w](const uint8_t* rd, uint8_t* wr, uint8_t* ax) {
        uint64_t xv = fx(rd), yv = fy(rd);
        uint8_t less = 0;
        for (long long bbit = 0; bbit < w; ++bbit) {
            int xb = (xv >> bbit) & 1, yb = (yv >> bbit) & 1;
            if (xb != yb)
                less = xb == 0 && yb == 1 ? 1 : 0;
            if (bbit < w - 1)
                ax[bbit] = less;
        }
        wr[0] = less;
    };
}

void build_addw(builder& b, const instr& ins) {
    auto x = b.word(ins.args[1]);
    auto y = b.word(ins.args[2]);
    auto fx = b.word_get(ins.args[1]);
    auto fy = b.word_get(ins.args[2]);
    long long w = b.w;
    std::vector<lin> z;
    for (long long bbit = 0; bbit < w; ++bbit)
        z.push_back(b.write(b.mem.int_bit(ins.args[0].name, bbit)));
    lin S = b.control();

    auto xor2 = [](uint64_t m) { return static_cast<int>((m ^ (m >> 1)) & 1); };
    auto xor3 = [](uint64_t m) { return static_cast<int>((m ^ (m >> 1) ^ (m >> 2)) & 1); };

    b.forbid_wrong({x[0], y[0]}, z[0], xor2);
    if (w == 1) {
        b.g.witness = [fx, fy, w](const uint8_t* rd, uint8_t* wr, uint8_t*) {
            wr[0] = static_cast<uint8_t>((fx(rd) + fy(rd)) & 1);
        };
        return;
    }

    // carry into bit 1
    {
        lin c1 = b.aux(0);
        b.le(S + c1 - x[0], 1);
        b.le(S + c1 - y[0], 1);
        b.le(S + x[0] + y[0] - c1, 2);
    }
    for (long long bbit = 1; bbit < w; ++bbit) {
        lin cb = b.aux(static_cast<int>(bbit) - 1);
        b.forbid_wrong({x[static_cast<size_t>(bbit)], y[static_cast<size_t>(bbit)], cb},
                       z[static_cast<size_t>(bbit)], xor3);
        if (bbit + 1 < w) {
            // majority carry
            lin cn = b.aux(static_cast<int>(bbit));
            lin xb = x[static_cast<size_t>(bbit)], yb = y[static_cast<size_t>(bbit)];
            b.le(S + cn - xb - yb, 1);
            b.le(S + cn - xb - cb, 1);
            b.le(S + cn - yb - cb, 1);
            b.le(S + xb + yb - cn, 2);
            b.le(S + xb + cb - cn, 2);
            b.le(S + yb + cb - cn, 2);
        }
    }
    uint64_t mask = mask_of(w);
    b.g.witness = [fx, fy, w, mask](const uint8_t* rd, uint8_t* wr, uint8_t* ax) {
        uint64_t xv = fx(rd), yv = fy(rd);
        uint64_t sum = (xv + yv) & mask;
        for (long long bbit = 0; bbit < w; ++bbit)
            wr[bbit] = (sum >> bbit) & 1;
        uint8_t carry = 0;
        for (long long bbit = 0; bbit + 1 < w; ++bbit) {
            int xb = (xv >> bbit) & 1, yb = (yv >> bbit) & 1;
            carry = static_cast<uint8_t>((xb + yb + carry) >> 1);
            ax[bbit] = carry;
        }
    };
}

// incw and decw ripple a carry (or borrow) chain up from the low bit: each
// output bit xors the input bit with the incoming chain value, and the chain
// continues while the consumed bit is one (inc) or zero (dec).
void build_stepw(builder& b, const instr& ins, bool inc) {
    auto x = b.word(ins.args[1]);
    auto fx = b.word_get(ins.args[1]);
    long long w = b.w;
    lin S = b.control();
    auto xor2 = [](uint64_t m) { return static_cast<int>((m ^ (m >> 1)) & 1); };

    // bit 0 always flips
    lin z0 = b.write(b.mem.int_bit(ins.args[0].name, 0));
    b.le(S + z0 + x[0], 2);
    b.le(S - z0 - x[0], 0);
    for (long long bbit = 1; bbit < w; ++bbit) {
        lin prev = b.aux(static_cast<int>(bbit) - 1);
        lin xp = x[static_cast<size_t>(bbit - 1)];
        if (bbit == 1) {
            // chain after bit 0 is that bit itself (inc) or its negation (dec)
            if (inc) {
                b.le(S + prev - xp, 1);
                b.le(S - prev + xp, 1);
            } else {
                b.le(S + prev + xp, 2);
                b.le(S - prev - xp, 0);
            }
        } else {
            lin before = b.aux(static_cast<int>(bbit) - 2);
            if (inc) {
                b.le(S + prev - xp, 1);
                b.le(S + prev - before, 1);
                b.le(S + xp + before - prev, 2);
            } else {
                b.le(S + prev + xp, 2);
                b.le(S + prev - before, 1);
                b.le(S - xp + before - prev, 1);
            }
        }
        lin zb = b.write(b.mem.int_bit(ins.args[0].name, bbit));
        b.forbid_wrong({x[static_cast<size_t>(bbit)], prev}, zb, xor2);
    }
    uint64_t mask = mask_of(w);
    b.g.witness = [fx, w, mask, inc](const uint8_t* rd, uint8_t* wr, uint8_t* ax) {
        uint64_t xv = fx(rd);
        uint64_t v = (xv + (inc ? 1 : mask)) & mask;
        for (long long bbit = 0; bbit < w; ++bbit)
            wr[bbit] = (v >> bbit) & 1;
        uint8_t chain = 1;
        for (long long bbit = 0; bbit + 1 < w; ++bbit) {
            uint8_t xb = static_cast<uint8_t>((xv >> bbit) & 1);
            chain &= inc ? xb : static_cast<uint8_t>(1 - xb);
            ax[bbit] = chain;
        }
    };
}

// Shared selector block: aux bit k rises exactly when the index word equals
// pattern m (with the control flag up).
void selector_rows(builder& b, const std::vector<lin>& idx, uint64_t m, const lin& e) {
    lin S = b.control();
    for (long long bbit = 0; bbit < b.w; ++bbit) {
        if ((m >> bbit) & 1)
            b.le(S + e - idx[static_cast<size_t>(bbit)], 1);
        else
            b.le(S + e + idx[static_cast<size_t>(bbit)], 2);
    }
    b.le(S - e + b.match(idx, m), b.w);
}

void build_array_ref(builder& b, const instr& ins) {
    const region& r = b.mem.of(ins.args[1].name);
    lin S = b.control();
    bool two_d = ins.args.size() == 4;

    if (!two_d) {
        auto idx = b.word(ins.args[2]);
        auto fi = b.word_get(ins.args[2]);
        // register old-value read slots in cell order
        std::vector<int> cell_slot;
        for (long long m = 0; m < r.d1; ++m)
            cell_slot.push_back(b.read_slot(r.base + m));
        lin z = b.write(b.mem.scalar_cell(ins.args[0].name));
        lin esum;
        for (long long m = 0; m < r.d1; ++m) {
            lin e = b.aux(static_cast<int>(m));
            selector_rows(b, idx, static_cast<uint64_t>(m), e);
            lin am = b.read(r.base + m);
            b.le(S + z - am + e, 2);
            b.le(S - z + am + e, 2);
            esum += e;
        }
        // out-of-range index: no selector up, output drops to zero
        b.le(S + z - esum, 1);
        long long extent = r.d1;
        b.g.witness = [fi, cell_slot, extent](const uint8_t* rd, uint8_t* wr, uint8_t* ax) {
            uint64_t i = fi(rd);
            for (long long m = 0; m < extent; ++m)
                ax[m] = i == static_cast<uint64_t>(m) ? 1 : 0;
            wr[0] = i < static_cast<uint64_t>(extent) ? rd[cell_slot[i]] : 0;
        };
        return;
    }

    auto ri = b.word(ins.args[2]);
    auto ci = b.word(ins.args[3]);
    auto fr = b.word_get(ins.args[2]);
    auto fc = b.word_get(ins.args[3]);
    std::vector<int> cell_slot;
    for (long long m = 0; m < r.cells; ++m)
        cell_slot.push_back(b.read_slot(r.base + m));
    lin z = b.write(b.mem.scalar_cell(ins.args[0].name));
    long long d1 = r.d1, d2 = r.d2;
    // aux layout: row selectors, then column selectors, then their products
    int col_base = static_cast<int>(d1);
    int prod_base = static_cast<int>(d1 + d2);
    for (long long rho = 0; rho < d1; ++rho)
        selector_rows(b, ri, static_cast<uint64_t>(rho), b.aux(static_cast<int>(rho)));
    for (long long gam = 0; gam < d2; ++gam)
        selector_rows(b, ci, static_cast<uint64_t>(gam), b.aux(col_base + static_cast<int>(gam)));
    lin psum;
    for (long long rho = 0; rho < d1; ++rho) {
        for (long long gam = 0; gam < d2; ++gam) {
            lin er = b.aux(static_cast<int>(rho));
            lin ec = b.aux(col_base + static_cast<int>(gam));
            lin pp = b.aux(prod_base + static_cast<int>(rho * d2 + gam));
            b.le(S + er + ec - pp, 2);
            b.le(S + pp - er, 1);
            b.le(S + pp - ec, 1);
            lin am = b.read(r.base + rho * d2 + gam);
            b.le(S + z - am + pp, 2);
            b.le(S - z + am + pp, 2);
            psum += pp;
        }
    }
    b.le(S + z - psum, 1);
    b.g.witness = [fr, fc, cell_slot, d1, d2](const uint8_t* rd, uint8_t* wr, uint8_t* ax) {
        uint64_t i = fr(rd), j = fc(rd);
        for (long long rho = 0; rho < d1; ++rho)
            ax[rho] = i == static_cast<uint64_t>(rho) ? 1 : 0;
        for (long long gam = 0; gam < d2; ++gam)
            ax[d1 + gam] = j == static_cast<uint64_t>(gam) ? 1 : 0;
        for (long long rho = 0; rho < d1; ++rho)
            for (long long gam = 0; gam < d2; ++gam)
                ax[d1 + d2 + rho * d2 + gam] = ax[rho] & ax[d1 + gam];
        wr[0] = (i < static_cast<uint64_t>(d1) && j < static_cast<uint64_t>(d2))
                    ? rd[cell_slot[i * static_cast<uint64_t>(d2) + j]]
                    : 0;
    };
}

void build_row_ref(builder& b, const instr& ins) {
    const region& r = b.mem.of(ins.args[1].name);
    long long w = b.w;
    lin S = b.control();
    auto idx = b.word(ins.args[2]);
    auto fi = b.word_get(ins.args[2]);
    std::vector<int> cell_slot;
    for (long long m = 0; m < r.cells; ++m)
        cell_slot.push_back(b.read_slot(r.base + m));
    std::vector<lin> z;
    for (long long bbit = 0; bbit < w; ++bbit)
        z.push_back(b.write(b.mem.int_bit(ins.args[0].name, bbit)));

    lin esum;
    for (long long m = 0; m < r.d1; ++m) {
        lin e = b.aux(static_cast<int>(m));
        selector_rows(b, idx, static_cast<uint64_t>(m), e);
        for (long long bbit = 0; bbit < w; ++bbit) {
            lin cell = b.read(r.base + m * r.d2 + bbit);
            b.le(S + z[static_cast<size_t>(bbit)] - cell + e, 2);
            b.le(S - z[static_cast<size_t>(bbit)] + cell + e, 2);
        }
        esum += e;
    }
    for (long long bbit = 0; bbit < w; ++bbit)
        b.le(S + z[static_cast<size_t>(bbit)] - esum, 1);
    long long d1 = r.d1, d2 = r.d2;
    b.g.witness = [fi, cell_slot, d1, d2, w](const uint8_t* rd, uint8_t* wr, uint8_t* ax) {
        uint64_t i = fi(rd);
        for (long long m = 0; m < d1; ++m)
            ax[m] = i == static_cast<uint64_t>(m) ? 1 : 0;
        for (long long bbit = 0; bbit < w; ++bbit)
            wr[bbit] = i < static_cast<uint64_t>(d1)
                           ? rd[cell_slot[i * static_cast<uint64_t>(d2) +
                                          static_cast<uint64_t>(bbit)]]
                           : 0;
    };
}

void build_array_set(builder& b, const instr& ins) {
    const region& r = b.mem.of(ins.args[0].name);
    lin S = b.control();
    bool two_d = ins.args.size() == 4;

    if (!two_d) {
        auto idx = b.word(ins.args[1]);
        auto fi = b.word_get(ins.args[1]);
        auto fv = b.bit_get(ins.args[2]);
        std::vector<int> old_slot;
        for (long long m = 0; m < r.d1; ++m)
            old_slot.push_back(b.read_slot(r.base + m));
        lin v = b.bit(ins.args[2]);

        for (long long m = 0; m < r.d1; ++m) {
            lin e = b.aux(static_cast<int>(m));
            selector_rows(b, idx, static_cast<uint64_t>(m), e);
            lin oldc = b.read(r.base + m);
            lin newc = b.write(r.base + m);
            b.le(S + newc - oldc - e, 1);
            b.le(S - newc + oldc - e, 1);
            b.le(S + newc - v + e, 2);
            b.le(S - newc + v + e, 2);
        }
        long long extent = r.d1;
        b.g.witness = [fi, fv, old_slot, extent](const uint8_t* rd, uint8_t* wr, uint8_t* ax) {
            uint64_t i = fi(rd);
            uint8_t v = fv(rd);
            for (long long m = 0; m < extent; ++m) {
                uint8_t sel = i == static_cast<uint64_t>(m) ? 1 : 0;
                ax[m] = sel;
                wr[m] = sel ? v : rd[old_slot[m]];
            }
        };
        return;
    }

    auto ri = b.word(ins.args[1]);
    auto ci = b.word(ins.args[2]);
    auto fr = b.word_get(ins.args[1]);
    auto fc = b.word_get(ins.args[2]);
    auto fv = b.bit_get(ins.args[3]);
    std::vector<int> old_slot;
    for (long long m = 0; m < r.cells; ++m)
        old_slot.push_back(b.read_slot(r.base + m));
    lin v = b.bit(ins.args[3]);

    long long d1 = r.d1, d2 = r.d2;
    // aux layout: row selectors, then column selectors, then their products
    int col_base = static_cast<int>(d1);
    int prod_base = static_cast<int>(d1 + d2);
    for (long long rho = 0; rho < d1; ++rho)
        selector_rows(b, ri, static_cast<uint64_t>(rho), b.aux(static_cast<int>(rho)));
    for (long long gam = 0; gam < d2; ++gam)
        selector_rows(b, ci, static_cast<uint64_t>(gam), b.aux(col_base + static_cast<int>(gam)));
    for (long long rho = 0; rho < d1; ++rho) {
        for (long long gam = 0; gam < d2; ++gam) {
            lin er = b.aux(static_cast<int>(rho));
            lin ec = b.aux(col_base + static_cast<int>(gam));
            lin pp = b.aux(prod_base + static_cast<int>(rho * d2 + gam));
            b.le(S + er + ec - pp, 2);
            b.le(S + pp - er, 1);
            b.le(S + pp - ec, 1);
            lin oldc = b.read(r.base + rho * d2 + gam);
            lin newc = b.write(r.base + rho * d2 + gam);
            b.le(S + newc - oldc - pp, 1);
            b.le(S - newc + oldc - pp, 1);
            b.le(S + newc - v + pp, 2);
            b.le(S - newc + v + pp, 2);
        }
    }
    b.g.witness = [fr, fc, fv, old_slot, d1, d2](const uint8_t* rd, uint8_t* wr, uint8_t* ax) {
        uint64_t i = fr(rd), j = fc(rd);
        uint8_t v = fv(rd);
        for (long long rho = 0; rho < d1; ++rho)
            ax[rho] = i == static_cast<uint64_t>(rho) ? 1 : 0;
        for (long long gam = 0; gam < d2; ++gam)
            ax[d1 + gam] = j == static_cast<uint64_t>(gam) ? 1 : 0;
        for (long long rho = 0; rho < d1; ++rho)
            for (long long gam = 0; gam < d2; ++gam) {
                uint8_t sel = ax[rho] & ax[d1 + gam];
                ax[d1 + d2 + rho * d2 + gam] = sel;
                wr[rho * d2 + gam] = sel ? v : rd[old_slot[rho * d2 + gam]];
            }
    };
}

void build_row_set(builder& b, const instr& ins) {
    const region& r = b.mem.of(ins.args[0].name);
    long long w = b.w;
    lin S = b.control();
    auto idx = b.word(ins.args[1]);
    auto fi = b.word_get(ins.args[1]);
    auto src = b.word(ins.args[2]);
    auto fs = b.word_get(ins.args[2]);
    std::vector<int> old_slot;
    for (long long m = 0; m < r.cells; ++m)
        old_slot.push_back(b.read_slot(r.base + m));

    for (long long m = 0; m < r.d1; ++m) {
        lin e = b.aux(static_cast<int>(m));
        selector_rows(b, idx, static_cast<uint64_t>(m), e);
        for (long long bbit = 0; bbit < w; ++bbit) {
            lin oldc = b.read(r.base + m * r.d2 + bbit);
            lin newc = b.write(r.base + m * r.d2 + bbit);
            b.le(S + newc - oldc - e, 1);
            b.le(S - newc + oldc - e, 1);
            b.le(S + newc - src[static_cast<size_t>(bbit)] + e, 2);
            b.le(S - newc + src[static_cast<size_t>(bbit)] + e, 2);
        }
    }
    long long d1 = r.d1, d2 = r.d2;
    b.g.witness = [fi, fs, old_slot, d1, d2, w](const uint8_t* rd, uint8_t* wr, uint8_t* ax) {
        uint64_t i = fi(rd);
        uint64_t v = fs(rd);
        for (long long m = 0; m < d1; ++m) {
            uint8_t sel = i == static_cast<uint64_t>(m) ? 1 : 0;
            ax[m] = sel;
            for (long long bbit = 0; bbit < w; ++bbit)
                wr[m * w + bbit] = sel ? static_cast<uint8_t>((v >> bbit) & 1)
                                       : rd[old_slot[m * d2 + bbit]];
        }
    };
}

void build_fill(builder& b, const instr& ins) {
    const region& r = b.mem.of(ins.args[0].name);
    lin S = b.control();
    uint8_t v = static_cast<uint8_t>(ins.args[1].value & 1);
    for (long long m = 0; m < r.cells; ++m) {
        lin c = b.write(r.base + m);
        if (v)
            b.le(S - c, 0);
        else
            b.le(S + c, 1);
    }
    long long cells = r.cells;
    b.g.witness = [v, cells](const uint8_t*, uint8_t* wr, uint8_t*) {
        for (long long m = 0; m < cells; ++m)
            wr[m] = v;
    };
}

} // namespace

gadget make_gadget(const instr& ins, const memory_map& mem) {
    if (opcode_is_control(ins.op) && ins.op != opcode::ret)
        return {};

    builder b(mem);
    switch (ins.op) {
    case opcode::copy: {
        lin x = b.bit(ins.args[1]);
        auto fx = b.bit_get(ins.args[1]);
        lin z = b.write(mem.scalar_cell(ins.args[0].name));
        b.forbid_wrong({x}, z, [](uint64_t m) { return static_cast<int>(m & 1); });
        b.g.witness = [fx](const uint8_t* rd, uint8_t* wr, uint8_t*) { wr[0] = fx(rd); };
        break;
    }
    case opcode::bnot: {
        lin x = b.bit(ins.args[1]);
        auto fx = b.bit_get(ins.args[1]);
        lin z = b.write(mem.scalar_cell(ins.args[0].name));
        b.forbid_wrong({x}, z, [](uint64_t m) { return static_cast<int>(1 - (m & 1)); });
        b.g.witness = [fx](const uint8_t* rd, uint8_t* wr, uint8_t*) { wr[0] = fx(rd) ^ 1; };
        break;
    }
    case opcode::band:
    case opcode::bor:
    case opcode::bxor:
    case opcode::beq:
        build_bool_binop(b, ins);
        break;
    case opcode::copyw: {
        auto x = b.word(ins.args[1]);
        auto fx = b.word_get(ins.args[1]);
        lin S = b.control();
        for (long long bbit = 0; bbit < b.w; ++bbit) {
            lin z = b.write(mem.int_bit(ins.args[0].name, bbit));
            b.le(S + z - x[static_cast<size_t>(bbit)], 1);
            b.le(S - z + x[static_cast<size_t>(bbit)], 1);
        }
        long long w = b.w;
        b.g.witness = [fx, w](const uint8_t* rd, uint8_t* wr, uint8_t*) {
            uint64_t v = fx(rd);
            for (long long bbit = 0; bbit < w; ++bbit)
                wr[bbit] = (v >> bbit) & 1;
        };
        break;
    }
    case opcode::eqw:
        build_eqw(b, ins);
        break;
    case opcode::ltw:
        build_ltw(b, ins);
        break;
    case opcode::addw:
        build_addw(b, ins);
        break;
    case opcode::incw:
        build_stepw(b, ins, true);
        break;
    case opcode::decw:
        build_stepw(b, ins, false);
        break;
    case opcode::array_ref:
        build_array_ref(b, ins);
        break;
    case opcode::row_ref:
        build_row_ref(b, ins);
        break;
    case opcode::array_set:
        build_array_set(b, ins);
        break;
    case opcode::row_set:
        build_row_set(b, ins);
        break;
    case opcode::array_init:
    case opcode::matrix_init:
        build_fill(b, ins);
        break;
    case opcode::ret: {
        lin wv = b.write(mem.scalar_cell("w"));
        lin S = b.control();
        uint8_t v = static_cast<uint8_t>(ins.args[0].value & 1);
        if (v)
            b.le(S - wv, 0);
        else
            b.le(S + wv, 1);
        b.g.witness = [v](const uint8_t*, uint8_t* wr, uint8_t*) { wr[0] = v; };
        break;
    }
    default:
        fail(error_kind::internal, "no gadget for this opcode");
    }
    return std::move(b.g);
}

} // namespace sparks
