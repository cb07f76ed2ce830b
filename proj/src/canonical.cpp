#include "cogload/canonical.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cogload {

namespace {

const std::string& canon(const OperationGraph& g, int id,
                         std::map<int, std::string>& memo) {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const auto* n = g.find(id);
    if (!n) throw InternalError("canonical_form: unknown node " + std::to_string(id));

    std::ostringstream out;
    out << n->op << "{";
    bool first = true;
    for (const auto& key : n->contexts) {  // std::set: already sorted
        if (!first) out << ",";
        out << key;
        first = false;
    }
    out << "}(";
    for (size_t i = 0; i < n->inputs.size(); ++i) {
        if (i) out << ",";
        const auto& in = n->inputs[i];
        if (in.from_source)
            out << "$" << in.source;
        else
            out << canon(g, in.node, memo);
    }
    out << ")";
    return memo[id] = out.str();
}

}  // namespace

std::string canonical_form(const OperationGraph& graph, int node_id) {
    std::map<int, std::string> memo;
    return canon(graph, node_id, memo);
}

std::vector<int> canonical_order(const OperationGraph& graph) {
    std::map<int, std::string> memo;
    std::vector<int> ids;
    for (const auto& n : graph.nodes) {
        canon(graph, n.id, memo);
        ids.push_back(n.id);
    }
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        if (memo[a] != memo[b]) return memo[a] < memo[b];
        return a < b;
    });
    return ids;
}

std::string canonical_serialize(const OperationGraph& graph) {
    std::map<int, std::string> memo;
    std::vector<std::string> lines;
    for (const auto& n : graph.nodes)
        lines.push_back("node " + canon(graph, n.id, memo));
    std::sort(lines.begin(), lines.end());

    std::vector<std::string> outs;
    for (const auto& [name, ref] : graph.outputs)
        outs.push_back("output " + name + " = " +
                       (ref.from_source ? "$" + ref.source
                                        : canon(graph, ref.node, memo)));
    std::sort(outs.begin(), outs.end());

    std::ostringstream out;
    out << "ocg v1\n";
    for (const auto& l : lines) out << l << "\n";
    for (const auto& l : outs) out << l << "\n";
    return out.str();
}

bool isomorphic(const OperationGraph& a, const OperationGraph& b) {
    return canonical_serialize(a) == canonical_serialize(b);
}

}  // namespace cogload
