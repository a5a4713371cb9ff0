#pragma once

#include "sparks/ast.hpp"
#include "sparks/layout.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sparks {

// Input values for one run: per input region, the flattened bit image in
// region cell order. Inputs absent from the file stay zero.
struct instance_assignment {
    std::map<std::string, std::vector<uint8_t>> values;

    // Full memory image at time 0 (non-input cells zero).
    std::vector<uint8_t> image(const memory_map& mem) const;

    // Cell ids of every input cell, ascending.
    std::vector<long long> input_cells(const memory_map& mem) const;

    // Input bit values aligned with input_cells().
    std::vector<uint8_t> input_bits(const memory_map& mem) const;
};

// Lines: `name <- v`, `array name[k] <- {b, ...}`,
// `matrix name[r,c] <- {{b, ...}, ...}`. Names must be declared inputs with
// matching shapes; int scalars take a W-bit value.
instance_assignment parse_instance(const std::string& text, const sparks_ast& ast);

} // namespace sparks
