#pragma once

#include <string>
#include <vector>

#include "cogload/opgraph.hpp"

namespace cogload {

// Name-independent description of a node: operation, sorted context keys,
// and the canonical forms of its producers (positionally; declared inputs
// appear as $name). Equal strings mean interchangeable nodes.
std::string canonical_form(const OperationGraph& graph, int node_id);

// Node ids ordered by canonical form (ties by id, which only twin nodes hit).
std::vector<int> canonical_order(const OperationGraph& graph);

// Stable textual form of the whole graph. Isomorphic graphs serialize to
// byte-identical text regardless of construction order or node numbering.
std::string canonical_serialize(const OperationGraph& graph);

bool isomorphic(const OperationGraph& a, const OperationGraph& b);

}  // namespace cogload
