#pragma once

#include <string>
#include <vector>

#include "cogload/ast.hpp"

namespace cogload {

enum class CfgKind { Start, End, Block, Selection, Iteration };

struct CfgNode {
    int id = -1;
    CfgKind kind = CfgKind::Block;
    std::vector<std::string> labels;   // Block: one label per primitive statement
    std::string guard;                 // Selection: condition text
    std::string loop_var;              // Iteration
    std::string collection;            // Iteration
};

struct CfgEdge {
    int from = -1;
    int to = -1;
    std::string label;   // "true"/"false" on selection out-edges
    bool back = false;   // loop back-edge
};

// CFG(a): one Start, one End, blocks/selections/iterations only. Carries a
// copy of the program so downstream flattening can reuse expression
// structure; the node/edge lists are the graph proper.
struct ControlFlowGraph {
    std::vector<CfgNode> nodes;
    std::vector<CfgEdge> edges;
    int start_id = -1;
    int end_id = -1;
    Ast program;

    const CfgNode& node(int id) const { return nodes.at(static_cast<size_t>(id)); }
};

// Lowers a validated Ast. Accumulates become init block + iteration + body;
// filters become selections nested in the loop body.
ControlFlowGraph build_cfg(const Ast& ast);

// True iff the graph decomposes into nested sequence/selection/iteration
// regions, judged from the edge structure alone.
bool verify_structured(const ControlFlowGraph& cfg, DiagnosticList* diags = nullptr);

}  // namespace cogload
