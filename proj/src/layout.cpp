#include "sparks/layout.hpp"

#include "sparks/diagnostics.hpp"

namespace sparks {

const region& memory_map::of(const std::string& name) const {
    const region* r = find(name);
    if (!r)
        fail(error_kind::internal, "no region named '" + name + "'");
    return *r;
}

const region* memory_map::find(const std::string& name) const {
    auto it = index.find(name);
    return it == index.end() ? nullptr : &regions[static_cast<size_t>(it->second)];
}

long long memory_map::scalar_cell(const std::string& name) const {
    const region& r = of(name);
    if (r.k != decl::kind::scalar_bool)
        fail(error_kind::internal, "'" + name + "' is not a bool scalar");
    return r.base;
}

long long memory_map::int_bit(const std::string& name, long long bit) const {
    const region& r = of(name);
    if (r.k != decl::kind::scalar_int || bit < 0 || bit >= word_size)
        fail(error_kind::internal, "bad int bit access on '" + name + "'");
    return r.base + bit;
}

long long memory_map::elem1d(const std::string& name, long long i) const {
    const region& r = of(name);
    if (r.k != decl::kind::array1d || i < 0 || i >= r.d1)
        fail(error_kind::internal, "bad array access on '" + name + "'");
    return r.base + i;
}

long long memory_map::elem2d(const std::string& name, long long row, long long col) const {
    const region& r = of(name);
    if (r.k != decl::kind::matrix || row < 0 || row >= r.d1 || col < 0 || col >= r.d2)
        fail(error_kind::internal, "bad matrix access on '" + name + "'");
    return r.base + row * r.d2 + col;
}

long long memory_map::row_base(const std::string& name, long long row) const {
    const region& r = of(name);
    if (r.k != decl::kind::matrix || row < 0 || row >= r.d1)
        fail(error_kind::internal, "bad row access on '" + name + "'");
    return r.base + row * r.d2;
}

std::string memory_map::cell_label(long long cell) const {
    for (const auto& r : regions) {
        if (cell < r.base || cell >= r.base + r.cells)
            continue;
        long long off = cell - r.base;
        switch (r.k) {
        case decl::kind::scalar_bool:
            return r.name;
        case decl::kind::scalar_int:
            return r.name + "." + std::to_string(off);
        case decl::kind::array1d:
            return r.name + "[" + std::to_string(off) + "]";
        case decl::kind::matrix:
            return r.name + "[" + std::to_string(off / r.d2) + "," + std::to_string(off % r.d2) +
                   "]";
        }
    }
    fail(error_kind::internal, "cell " + std::to_string(cell) + " outside the layout");
}

memory_map layout_memory(const std::vector<decl>& decls, long long word_size) {
    memory_map mm;
    mm.word_size = word_size;
    for (const auto& d : decls) {
        region r;
        r.name = d.name;
        r.k = d.k;
        r.is_input = d.is_input;
        r.base = mm.total;
        r.d1 = d.dim1;
        r.d2 = d.dim2;
        switch (d.k) {
        case decl::kind::scalar_bool: r.cells = 1; break;
        case decl::kind::scalar_int: r.cells = word_size; break;
        case decl::kind::array1d: r.cells = d.dim1; break;
        case decl::kind::matrix: r.cells = d.dim1 * d.dim2; break;
        }
        if (mm.index.count(r.name))
            fail(error_kind::internal, "duplicate region '" + r.name + "'");
        mm.index[r.name] = static_cast<int>(mm.regions.size());
        mm.total += r.cells;
        mm.regions.push_back(std::move(r));
    }
    return mm;
}

} // namespace sparks
