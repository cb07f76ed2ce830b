#pragma once

#include "cogload/ast.hpp"
#include "cogload/lexer.hpp"

namespace cogload {

// LL(1) recursive-descent parse of the token stream. Throws ParseError with
// the offending position and the expected-set message.
Ast parse(const std::vector<Token>& tokens);

// Convenience: tokenize + parse.
Ast parse_program(const SourceProgram& source);

}  // namespace cogload
