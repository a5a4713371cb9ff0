#pragma once

#include "sparks/ast.hpp"
#include "sparks/params.hpp"

#include <string>

namespace sparks {

// Replaces every $...$ region with the decimal value of the enclosed
// parameter expression. Runs before tokenization.
std::string substitute_params(const std::string& text, const param_env& env);

// Parses and type checks a source program. Checks that every execution
// path ends in a return, that extents fit the word size, and that phase
// blocks (when present) cover the whole program.
sparks_ast parse_sparks(const std::string& text, const param_env& env);

// Canonical source form; parse(pretty_print(ast)) reproduces the ast.
std::string pretty_print(const sparks_ast& ast);

} // namespace sparks
