#pragma once

#include "cogload/ast.hpp"

namespace cogload {

// Built-in operation vocabulary: primitive arithmetic plus the named
// operations programs may call directly. Schema knowledge bases decide,
// separately, which of these a user group has internalized.
bool is_primitive_op(const std::string& name);
bool is_builtin_op(const std::string& name);

// Checks def-before-use, single assignment, loop-variable scoping, light
// typing over {scalar, vector, collection, table}, and output definedness.
// Returns an empty list iff the program is well formed; never mutates.
DiagnosticList validate(const Ast& ast);

}  // namespace cogload
