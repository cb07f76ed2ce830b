#pragma once

#include <string>
#include <vector>

#include "cogload/diagnostics.hpp"

namespace cogload {

struct SourceProgram {
    std::string text;
    std::string origin = "<inline>";
};

enum class TokenKind { Ident, Keyword, Number, Symbol, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    SourcePos pos;

    bool is(TokenKind k, const std::string& t) const {
        return kind == k && text == t;
    }
};

// Splits the program into tokens. `#` starts a line comment. Throws LexError
// on an illegal character or if nothing but comments/whitespace remains.
std::vector<Token> tokenize(const SourceProgram& source);

bool is_keyword(const std::string& word);

}  // namespace cogload
