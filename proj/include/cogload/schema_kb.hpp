#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cogload/ast.hpp"

namespace cogload {

// A named operation a reader group has internalized. Atomic schemas are
// vocabulary only; a schema with a decomposition additionally tells the
// abstraction pass which operation subgraphs collapse into it.
struct Schema {
    std::string name;
    std::vector<std::string> params;
    ValueType result = ValueType::Scalar;
    int level = 1;                      // recomputed, never read from disk
    std::optional<Ast> decomposition;   // mini-program; free inputs bind
};

struct SchemaKnowledgeBase {
    std::string name;
    std::set<std::string> primitives;
    std::map<std::string, Schema> schemas;

    bool knows(const std::string& op) const {
        return primitives.count(op) > 0 || schemas.count(op) > 0;
    }
    // Primitives sit at level 0, atomic schemas at 1, composed schemas one
    // above the highest-level operation they are built from.
    int level_of(const std::string& op) const;
};

// Parses a .kb file. Throws LexError/ParseError on malformed input; use
// validate_kb for semantic problems (cycles, unknown operations, ...).
SchemaKnowledgeBase load_kb(const std::string& path);
SchemaKnowledgeBase parse_kb(const std::string& text, const std::string& origin);

// Refreshes Schema::level after schemas are added or changed.
void recompute_levels(SchemaKnowledgeBase& kb);

// Duplicate names, decompositions that use operations outside the KB or that
// flatten to fewer than two nodes, parameter lists that disagree with the
// decomposition's inputs, and definition cycles.
DiagnosticList validate_kb(const SchemaKnowledgeBase& kb);

// True iff every operation `small` knows, `large` knows too (with the same
// decomposition status); the precondition for literacy monotonicity.
bool kb_subset(const SchemaKnowledgeBase& small, const SchemaKnowledgeBase& large);

}  // namespace cogload
