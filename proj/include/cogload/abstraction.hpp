#pragma once

#include <stdexcept>

#include "cogload/opgraph.hpp"
#include "cogload/schema_kb.hpp"

namespace cogload {

// A schema decomposition, flattened. Free inputs became source placeholders;
// matching binds each placeholder consistently to one target input.
struct Pattern {
    std::string schema;
    int level = 1;
    OperationGraph graph;
    int output_node = -1;  // pattern node producing the decomposition output
};

Pattern build_pattern(const Schema& schema);

struct Match {
    std::string schema;
    std::map<int, int> binding;              // pattern node id -> target node id
    std::map<std::string, InputRef> inputs;  // placeholder -> bound target input
    std::vector<int> replaced;               // matched target ids, ascending
};

// Injective embeddings of the pattern: operations and positional inputs line
// up, all matched nodes carry identical context sets, and no node except the
// pattern output feeds anything outside the match (program outputs
// included). Results come back in canonical order by replaced-id list.
std::vector<Match> find_matches(const OperationGraph& target, const Pattern& pattern);

// Thrown when a match is applied after the graph moved underneath it.
struct StaleMatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Replaces the matched subgraph with one schema node that inherits the
// shared contexts and the deduplicated external inputs. Node count strictly
// decreases (decompositions have at least two operations).
void apply_match(OperationGraph& graph, const Pattern& pattern, const Match& match);

struct AbstractionStep {
    std::string schema;
    std::vector<int> replaced;
    int produced = -1;
};

// Repeatedly applies the highest-level applicable schema (ties broken by
// name, then by canonical match order) until nothing matches. max_steps < 0
// means run to the fixpoint; otherwise stop after that many rewrites.
OperationContextGraph abstract_to_fixpoint(const OperationGraph& base,
                                           const SchemaKnowledgeBase& kb,
                                           std::vector<AbstractionStep>* trace = nullptr,
                                           int max_steps = -1);

}  // namespace cogload
