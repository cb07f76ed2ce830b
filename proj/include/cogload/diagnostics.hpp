#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cogload {

struct SourcePos {
    int line = 1;
    int column = 1;

    bool operator==(const SourcePos&) const = default;
};

// A single validation/analysis finding. Collected into lists rather than
// thrown; validation never mutates its input.
struct Diagnostic {
    SourcePos pos;
    std::string code;     // e.g. "UndeclaredVariable"
    std::string message;
};

using DiagnosticList = std::vector<Diagnostic>;

std::string format_diagnostic(const Diagnostic& d, const std::string& origin);

// Hard failures in the frontend (illegal character, unparsable input).
class LexError : public std::runtime_error {
public:
    LexError(SourcePos pos, const std::string& msg)
        : std::runtime_error(msg), pos_(pos) {}
    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(SourcePos pos, const std::string& msg)
        : std::runtime_error(msg), pos_(pos) {}
    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

// Violation of an internal invariant (validated input should never trigger).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace cogload
