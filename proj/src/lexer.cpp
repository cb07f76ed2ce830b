#include "cogload/lexer.hpp"

#include <cctype>
#include <unordered_set>

namespace cogload {

namespace {

const std::unordered_set<std::string>& keyword_table() {
    static const std::unordered_set<std::string> kw = {
        "algorithm", "input",  "scalar", "vector",  "collection", "table",
        "subset",    "of",     "size",   "output",  "for",        "each",
        "in",        "where",  "and",    "if",      "else",       "sum",
        "product",   "average", "weighted_average", "over",       "weights",
    };
    return kw;
}

}  // namespace

bool is_keyword(const std::string& word) {
    return keyword_table().count(word) > 0;
}

std::vector<Token> tokenize(const SourceProgram& source) {
    std::vector<Token> tokens;
    const std::string& s = source.text;
    SourcePos pos;
    size_t i = 0;

    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (s[i + k] == '\n') {
                pos.line++;
                pos.column = 1;
            } else {
                pos.column++;
            }
        }
        i += n;
    };

    while (i < s.size()) {
        char c = s[i];
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        SourcePos start = pos;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                j++;
            std::string word = s.substr(i, j - i);
            advance(j - i);
            tokens.push_back({is_keyword(word) ? TokenKind::Keyword : TokenKind::Ident,
                              word, start});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.'))
                j++;
            std::string num = s.substr(i, j - i);
            advance(j - i);
            tokens.push_back({TokenKind::Number, num, start});
            continue;
        }
        // two-character comparison operators first
        if (i + 1 < s.size()) {
            std::string two = s.substr(i, 2);
            if (two == ">=" || two == "<=" || two == "==" || two == "!=") {
                advance(2);
                tokens.push_back({TokenKind::Symbol, two, start});
                continue;
            }
        }
        static const std::string singles = "=+-*/()[]{},:<>";
        if (singles.find(c) != std::string::npos) {
            advance(1);
            tokens.push_back({TokenKind::Symbol, std::string(1, c), start});
            continue;
        }
        throw LexError(pos, "illegal character '" + std::string(1, c) + "'");
    }

    if (tokens.empty())
        throw LexError(pos, "empty program (nothing left after comments)");
    tokens.push_back({TokenKind::End, "", pos});
    return tokens;
}

}  // namespace cogload
