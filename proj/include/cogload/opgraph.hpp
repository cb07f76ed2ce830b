#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cogload/cfg.hpp"

namespace cogload {

// A node input: either another operation node or a named program input.
// Declared inputs stay symbolic so they never count toward parent load.
struct InputRef {
    bool from_source = false;
    int node = -1;            // producer node id when !from_source
    std::string source;       // input name when from_source

    bool operator==(const InputRef& o) const {
        return from_source == o.from_source && node == o.node && source == o.source;
    }
    bool operator<(const InputRef& o) const {
        if (from_source != o.from_source) return from_source < o.from_source;
        if (node != o.node) return node < o.node;
        return source < o.source;
    }
};

// Raw enclosing-scope record captured during flattening. Context labels are
// derived from these once declarations are consulted; see assign_contexts.
struct ScopeRef {
    enum class Kind { Loop, Guard };
    Kind kind = Kind::Loop;
    std::string collection;  // Loop: iterated collection name
    std::string guard;       // Guard: normalized comparison text
};

// A context label names a piece of working memory the reader must hold:
// either "we are inside data subset X" or "elements satisfying guard G".
// Identity is by content, so two loops over the same subset share a label.
struct ContextLabel {
    std::string key;      // "subset:<name>" or "pred:<text>"
    std::string display;  // human-readable form for reports
    std::string origin;   // "subset" | "predicate"
};

struct OperationNode {
    int id = -1;
    std::string op;                  // operation name (primitive or schema)
    std::string target;              // variable defined, if statement-level
    std::string description;         // pretty-printed defining fragment
    std::vector<InputRef> inputs;    // positional, deduplicated
    std::vector<ScopeRef> scopes;    // raw lexical scopes (flatten output)
    std::set<std::string> contexts;  // label keys (assign_contexts output)
};

// Operation-dependence graph; after context assignment and abstraction this
// is the operation-context graph the score is read off of.
struct OperationGraph {
    std::string algorithm;
    std::string kb_name;  // knowledge base used for abstraction, if any
    std::vector<OperationNode> nodes;
    std::map<std::string, ContextLabel> contexts;
    std::vector<std::pair<std::string, InputRef>> outputs;
    int next_id = 0;

    const OperationNode* find(int id) const;
    OperationNode* find(int id);
    std::vector<int> consumers_of(int id) const;
};

using OperationContextGraph = OperationGraph;

// |contexts(n)| and the number of distinct producing nodes feeding n.
int context_count(const OperationNode& n);
int parent_count(const OperationNode& n);

// Flattens the program carried by the CFG into operation nodes with data
// dependencies and raw scope stacks. Index expressions contribute no
// dependencies; a read through a loop variable depends on the producer of
// the variable it names into. Accumulations depend on their collection.
OperationGraph flatten(const ControlFlowGraph& cfg);

// Converts raw scopes into context labels: iterating a declared full
// collection adds nothing, iterating a subset or computed collection adds a
// subset label, and every guard conjunct adds a predicate label.
void assign_contexts(OperationGraph& graph, const Ast& program);

}  // namespace cogload
