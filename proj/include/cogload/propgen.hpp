#pragma once

#include <cstdint>

#include "cogload/ast.hpp"
#include "cogload/schema_kb.hpp"

namespace cogload {

// Knobs for the random-program generator used by the property suites.
struct ProgramGenConfig {
    int max_statements = 6;
    int max_depth = 2;
    int max_filters = 2;
    std::uint64_t seed = 0;
};

// Deterministic per seed. Every statement form appears with nonzero
// probability and the result always passes validate().
Ast gen_program(const ProgramGenConfig& config);

// Extends `kb` with 1-3 fresh schemas whose decompositions are connected
// 2-4 operation expression fragments lifted from `program` (falling back to
// a canned primitive combination when the program offers none), so the
// extension has a real chance of matching. kb_subset(kb, result) holds.
SchemaKnowledgeBase gen_kb_extension(const SchemaKnowledgeBase& kb, std::uint64_t seed,
                                     const Ast& program);

}  // namespace cogload
