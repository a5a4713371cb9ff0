#pragma once

#include "sparks/ast.hpp"

#include <map>
#include <string>
#include <vector>

namespace sparks {

struct region {
    std::string name;
    decl::kind k = decl::kind::scalar_bool;
    bool is_input = false;
    long long base = 0;
    long long d1 = 1, d2 = 1;
    long long cells = 1;
};

// Flat bit-cell layout in declaration order. Int scalars take one cell per
// bit, least significant first. Matrices are row-major.
struct memory_map {
    std::vector<region> regions;
    std::map<std::string, int> index;
    long long total = 0;
    long long word_size = 1;

    const region& of(const std::string& name) const;
    const region* find(const std::string& name) const;

    long long scalar_cell(const std::string& name) const;
    long long int_bit(const std::string& name, long long bit) const;
    long long elem1d(const std::string& name, long long i) const;
    long long elem2d(const std::string& name, long long r, long long c) const;
    long long row_base(const std::string& name, long long r) const;

    // Human readable label for one cell, e.g. "b", "i.2", "x[1,2]".
    std::string cell_label(long long cell) const;
};

memory_map layout_memory(const std::vector<decl>& decls, long long word_size);

} // namespace sparks
