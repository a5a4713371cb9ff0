#pragma once

#include "sparks/asm_program.hpp"
#include "sparks/ast.hpp"

namespace sparks {

// Flattens structured statements into labeled branch form and records the
// per-construct cost tree used by the step analyzer. Compiler temporaries
// are appended to the declaration list in first-use order, after the
// implicit output bit `w`.
asm_program lower(const sparks_ast& ast);

} // namespace sparks
