#include "cogload/abstraction.hpp"

#include <algorithm>
#include <functional>

namespace cogload {

Pattern build_pattern(const Schema& schema) {
    if (!schema.decomposition)
        throw InternalError("schema '" + schema.name + "' has no decomposition");
    Pattern pat;
    pat.schema = schema.name;
    pat.level = schema.level;
    pat.graph = flatten(build_cfg(*schema.decomposition));
    if (pat.graph.outputs.size() != 1 || pat.graph.outputs[0].second.from_source)
        throw InternalError("schema '" + schema.name +
                            "' decomposition output is not an operation");
    pat.output_node = pat.graph.outputs[0].second.node;
    return pat;
}

namespace {

bool boundary_closed(const OperationGraph& target, const Pattern& pattern,
                     const Match& m) {
    std::set<int> matched;
    for (const auto& [p, t] : m.binding) matched.insert(t);
    int out_t = m.binding.at(pattern.output_node);

    // Placeholders must bind outside the match, or the rewrite would keep a
    // reference to a node it deletes.
    for (const auto& [name, ref] : m.inputs)
        if (!ref.from_source && matched.count(ref.node)) return false;

    for (int t : matched) {
        if (t == out_t) continue;
        for (int c : target.consumers_of(t))
            if (!matched.count(c)) return false;
        for (const auto& [name, ref] : target.outputs)
            if (!ref.from_source && ref.node == t) return false;
    }
    return true;
}

bool context_uniform(const OperationGraph& target, const Match& m) {
    const std::set<std::string>* first = nullptr;
    for (const auto& [p, t] : m.binding) {
        const auto& ctx = target.find(t)->contexts;
        if (!first)
            first = &ctx;
        else if (ctx != *first)
            return false;
    }
    return true;
}

}  // namespace

std::vector<Match> find_matches(const OperationGraph& target, const Pattern& pattern) {
    const auto& pnodes = pattern.graph.nodes;  // creation order: inputs first
    std::vector<Match> out;
    Match cur;
    cur.schema = pattern.schema;
    std::set<int> used;

    std::function<void(size_t)> go = [&](size_t i) {
        if (i == pnodes.size()) {
            if (!context_uniform(target, cur)) return;
            if (!boundary_closed(target, pattern, cur)) return;
            Match m = cur;
            for (const auto& [p, t] : m.binding) m.replaced.push_back(t);
            std::sort(m.replaced.begin(), m.replaced.end());
            out.push_back(std::move(m));
            return;
        }
        const auto& p = pnodes[i];
        for (const auto& t : target.nodes) {
            if (used.count(t.id)) continue;
            if (t.op != p.op || t.inputs.size() != p.inputs.size()) continue;
            auto saved = cur.inputs;
            bool ok = true;
            for (size_t k = 0; k < p.inputs.size() && ok; ++k) {
                const auto& pi = p.inputs[k];
                const auto& ti = t.inputs[k];
                if (!pi.from_source) {
                    // Pattern-internal edge: the producer is already bound
                    // because pattern nodes are visited in creation order.
                    auto b = cur.binding.find(pi.node);
                    ok = b != cur.binding.end() && !ti.from_source &&
                         ti.node == b->second;
                } else {
                    auto [it, fresh] = cur.inputs.emplace(pi.source, ti);
                    if (!fresh) ok = it->second == ti;
                }
            }
            if (ok) {
                cur.binding[p.id] = t.id;
                used.insert(t.id);
                go(i + 1);
                used.erase(t.id);
                cur.binding.erase(p.id);
            }
            cur.inputs = std::move(saved);
        }
    };
    go(0);

    std::sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
        if (a.replaced != b.replaced) return a.replaced < b.replaced;
        return a.binding < b.binding;
    });
    return out;
}

void apply_match(OperationGraph& graph, const Pattern& pattern, const Match& match) {
    for (const auto& [p, t] : match.binding) {
        const auto* node = graph.find(t);
        const auto* pnode = pattern.graph.find(p);
        if (!node || !pnode || node->op != pnode->op)
            throw StaleMatch("match for '" + pattern.schema +
                             "' no longer fits the graph");
    }
    int out_t = match.binding.at(pattern.output_node);
    std::set<int> matched(match.replaced.begin(), match.replaced.end());

    OperationNode nn;
    nn.id = graph.next_id++;
    nn.op = pattern.schema;
    nn.contexts = graph.find(out_t)->contexts;
    nn.target = graph.find(out_t)->target;
    nn.description = (nn.target.empty() ? std::string() : nn.target + " = ") +
                     pattern.schema + " [" + std::to_string(matched.size()) +
                     " ops]";
    for (const auto& pnode : pattern.graph.nodes) {
        const auto* tnode = graph.find(match.binding.at(pnode.id));
        for (const auto& in : tnode->inputs) {
            if (!in.from_source && matched.count(in.node)) continue;
            if (std::find(nn.inputs.begin(), nn.inputs.end(), in) == nn.inputs.end())
                nn.inputs.push_back(in);
        }
    }

    for (auto& node : graph.nodes) {
        if (matched.count(node.id)) continue;
        for (auto& in : node.inputs)
            if (!in.from_source && in.node == out_t) in.node = nn.id;
    }
    for (auto& [name, ref] : graph.outputs)
        if (!ref.from_source && ref.node == out_t) ref.node = nn.id;

    std::erase_if(graph.nodes,
                  [&](const OperationNode& n) { return matched.count(n.id) > 0; });
    graph.nodes.push_back(std::move(nn));
}

OperationContextGraph abstract_to_fixpoint(const OperationGraph& base,
                                           const SchemaKnowledgeBase& kb,
                                           std::vector<AbstractionStep>* trace,
                                           int max_steps) {
    OperationContextGraph graph = base;
    graph.kb_name = kb.name;

    std::vector<Pattern> patterns;
    for (const auto& [name, schema] : kb.schemas)
        if (schema.decomposition) patterns.push_back(build_pattern(schema));
    std::sort(patterns.begin(), patterns.end(), [](const Pattern& a, const Pattern& b) {
        if (a.level != b.level) return a.level > b.level;
        return a.schema < b.schema;
    });

    int steps = 0;
    bool changed = true;
    while (changed && (max_steps < 0 || steps < max_steps)) {
        changed = false;
        for (const auto& pattern : patterns) {
            auto matches = find_matches(graph, pattern);
            if (matches.empty()) continue;
            size_t before = graph.nodes.size();
            apply_match(graph, pattern, matches.front());
            if (graph.nodes.size() >= before)
                throw InternalError("abstraction step did not shrink the graph");
            if (trace)
                trace->push_back(
                    {pattern.schema, matches.front().replaced, graph.nodes.back().id});
            ++steps;
            changed = true;
            break;  // rescan from the highest-level schema
        }
    }
    return graph;
}

}  // namespace cogload
