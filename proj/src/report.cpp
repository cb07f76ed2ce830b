#include "cogload/report.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace cogload {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string cfg_label(const CfgNode& n) {
    switch (n.kind) {
        case CfgKind::Start: return "start";
        case CfgKind::End: return "end";
        case CfgKind::Selection: return n.guard;
        case CfgKind::Iteration: return "for " + n.loop_var + " in " + n.collection;
        case CfgKind::Block: {
            std::string out;
            for (size_t i = 0; i < n.labels.size(); ++i) {
                if (i) out += "\\n";
                out += escape(n.labels[i]);
            }
            return out.empty() ? "(empty)" : out;
        }
    }
    return "?";
}

std::string cfg_shape(CfgKind k) {
    switch (k) {
        case CfgKind::Start:
        case CfgKind::End: return "diamond, style=dashed";
        case CfgKind::Selection: return "diamond";
        case CfgKind::Iteration: return "ellipse";
        case CfgKind::Block: return "box";
    }
    return "box";
}

}  // namespace

std::string to_dot(const ControlFlowGraph& cfg) {
    std::ostringstream out;
    out << "digraph cfg {\n  rankdir=TB;\n  node [fontname=\"Helvetica\"];\n";
    for (const auto& n : cfg.nodes) {
        std::string label = n.kind == CfgKind::Block ? cfg_label(n) : escape(cfg_label(n));
        out << "  n" << n.id << " [label=\"" << label << "\", shape="
            << cfg_shape(n.kind) << "];\n";
    }
    for (const auto& e : cfg.edges) {
        out << "  n" << e.from << " -> n" << e.to;
        std::string attrs;
        if (!e.label.empty()) attrs += "label=\"" + escape(e.label) + "\"";
        if (e.back) {
            if (!attrs.empty()) attrs += ", ";
            attrs += "style=dashed, constraint=false";
        }
        if (!attrs.empty()) out << " [" << attrs << "]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

namespace {

struct ContextForest {
    bool laminar = true;
    std::map<std::string, std::set<int>> members;
    std::map<std::string, std::string> parent;          // key -> enclosing key
    std::map<std::string, std::vector<std::string>> kids;
    std::vector<std::string> roots;
    std::map<int, std::string> home;  // node -> innermost cluster
};

ContextForest build_forest(const OperationContextGraph& g) {
    ContextForest f;
    for (const auto& n : g.nodes)
        for (const auto& key : n.contexts) f.members[key].insert(n.id);

    std::vector<std::string> keys;
    for (const auto& [key, ids] : f.members) keys.push_back(key);
    for (size_t i = 0; i < keys.size() && f.laminar; ++i)
        for (size_t j = i + 1; j < keys.size() && f.laminar; ++j) {
            const auto& a = f.members[keys[i]];
            const auto& b = f.members[keys[j]];
            bool a_in_b = std::includes(b.begin(), b.end(), a.begin(), a.end());
            bool b_in_a = std::includes(a.begin(), a.end(), b.begin(), b.end());
            std::set<int> common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::inserter(common, common.begin()));
            if (!a_in_b && !b_in_a && !common.empty()) f.laminar = false;
        }
    if (!f.laminar) return f;

    // Innermost enclosing cluster = smallest strict superset of the members.
    std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
        if (f.members[a].size() != f.members[b].size())
            return f.members[a].size() > f.members[b].size();
        return a < b;
    });
    for (size_t i = 0; i < keys.size(); ++i) {
        std::string best;
        for (size_t j = 0; j < i; ++j) {
            const auto& inner = f.members[keys[i]];
            const auto& outer = f.members[keys[j]];
            if (outer.size() == inner.size()) continue;
            if (std::includes(outer.begin(), outer.end(), inner.begin(), inner.end()))
                best = keys[j];  // keys sorted big-to-small: last hit is smallest
        }
        if (best.empty())
            f.roots.push_back(keys[i]);
        else
            f.kids[best].push_back(keys[i]);
        f.parent[keys[i]] = best;
    }
    for (const auto& n : g.nodes) {
        std::string innermost;
        size_t innermost_size = 0;
        for (const auto& key : n.contexts) {
            size_t sz = f.members[key].size();
            if (innermost.empty() || sz < innermost_size ||
                (sz == innermost_size && key < innermost)) {
                innermost = key;
                innermost_size = sz;
            }
        }
        if (!innermost.empty()) f.home[n.id] = innermost;
    }
    return f;
}

}  // namespace

std::string to_dot(const OperationContextGraph& g) {
    std::ostringstream out;
    out << "digraph ocg {\n  rankdir=TB;\n  node [fontname=\"Helvetica\", shape=box];\n";

    ContextForest forest = build_forest(g);

    auto node_label = [&](const OperationNode& n) {
        std::string label = n.op;
        if (!n.target.empty()) label += "\\n" + escape(n.target);
        if (!forest.laminar && !n.contexts.empty()) {
            label += "\\nctx:";
            for (const auto& key : n.contexts) {
                auto it = g.contexts.find(key);
                label += " " + escape(it == g.contexts.end() ? key : it->second.display);
            }
        }
        return label;
    };
    auto emit_node = [&](const OperationNode& n, const std::string& indent) {
        out << indent << "n" << n.id << " [label=\"" << node_label(n) << "\"];\n";
    };

    if (forest.laminar) {
        int cluster_no = 0;
        std::function<void(const std::string&, std::string)> emit_cluster =
            [&](const std::string& key, std::string indent) {
                auto it = g.contexts.find(key);
                out << indent << "subgraph cluster_" << cluster_no++ << " {\n"
                    << indent << "  label=\""
                    << escape(it == g.contexts.end() ? key : it->second.display)
                    << "\";\n" << indent << "  style=dashed;\n";
                for (const auto& kid : forest.kids[key]) emit_cluster(kid, indent + "  ");
                for (const auto& n : g.nodes)
                    if (forest.home.count(n.id) && forest.home[n.id] == key)
                        emit_node(n, indent + "  ");
                out << indent << "}\n";
            };
        for (const auto& root : forest.roots) emit_cluster(root, "  ");
        for (const auto& n : g.nodes)
            if (!forest.home.count(n.id)) emit_node(n, "  ");
    } else {
        for (const auto& n : g.nodes) emit_node(n, "  ");
    }

    std::set<std::string> sources;
    for (const auto& n : g.nodes)
        for (const auto& in : n.inputs)
            if (in.from_source) sources.insert(in.source);
    for (const auto& s : sources)
        out << "  s_" << s << " [label=\"" << escape(s)
            << "\", shape=plaintext];\n";

    for (const auto& n : g.nodes)
        for (const auto& in : n.inputs) {
            if (in.from_source)
                out << "  s_" << in.source << " -> n" << n.id << ";\n";
            else
                out << "  n" << in.node << " -> n" << n.id << ";\n";
        }
    for (const auto& [name, ref] : g.outputs) {
        out << "  out_" << name << " [label=\"" << escape(name)
            << "\", shape=plaintext];\n  ";
        if (ref.from_source)
            out << "s_" << ref.source;
        else
            out << "n" << ref.node;
        out << " -> out_" << name << " [style=dotted];\n";
    }
    out << "}\n";
    return out.str();
}

nlohmann::ordered_json score_report(const PipelineResult& result, Growth growth) {
    nlohmann::ordered_json report;
    report["reportVersion"] = 1;
    report["algorithm"] = result.ocg.algorithm;
    report["knowledgeBase"] = result.ocg.kb_name;

    nlohmann::ordered_json score;
    score["symbolic"] = result.score.format();
    score["numeric"] = evaluate(result.score, growth);
    score["growth"] = to_string(growth);
    report["score"] = score;

    report["structure"] = {{"odgNodes", result.odg.nodes.size()},
                           {"ocgNodes", result.ocg.nodes.size()}};

    nlohmann::ordered_json contexts = nlohmann::ordered_json::array();
    for (const auto& [key, label] : result.ocg.contexts) {
        bool live = false;
        for (const auto& n : result.ocg.nodes) live = live || n.contexts.count(key);
        if (!live) continue;
        contexts.push_back(
            {{"key", key}, {"display", label.display}, {"origin", label.origin}});
    }
    report["contexts"] = contexts;

    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (int id : canonical_order(result.ocg)) {
        const auto& n = *result.ocg.find(id);
        nlohmann::ordered_json entry;
        entry["id"] = n.id;
        entry["op"] = n.op;
        entry["target"] = n.target;
        entry["contexts"] = n.contexts;
        entry["parents"] = parent_count(n);
        entry["load"] = cognitive_load(n);
        nodes.push_back(std::move(entry));
    }
    report["nodes"] = nodes;

    nlohmann::ordered_json histogram;
    for (const auto& [exp, count] : result.score.terms())
        histogram[std::to_string(exp)] = count;
    report["loadHistogram"] = histogram;

    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const auto& step : result.trace)
        steps.push_back({{"schema", step.schema},
                         {"replaced", step.replaced},
                         {"produced", step.produced}});
    report["abstraction"] = steps;
    return report;
}

std::string compare_table(const std::string& algorithm,
                          const std::vector<CompareRow>& rows, Growth growth,
                          bool color) {
    size_t kb_w = 2, score_w = 5;
    double best = 0.0;
    for (size_t i = 0; i < rows.size(); ++i) {
        kb_w = std::max(kb_w, rows[i].kb.size());
        score_w = std::max(score_w, rows[i].score.format().size());
        double v = evaluate(rows[i].score, growth);
        if (i == 0 || v < best) best = v;
    }

    std::ostringstream out;
    out << "algorithm: " << algorithm << " (growth: " << to_string(growth) << ")\n";
    out << std::left << std::setw(static_cast<int>(kb_w) + 2) << "kb"
        << std::setw(7) << "nodes" << std::setw(static_cast<int>(score_w) + 2)
        << "score" << "numeric\n";
    for (const auto& row : rows) {
        double v = evaluate(row.score, growth);
        bool is_best = v == best && rows.size() > 1;
        if (is_best && color) out << "\033[32m";
        out << std::left << std::setw(static_cast<int>(kb_w) + 2) << row.kb
            << std::setw(7) << row.nodes << std::setw(static_cast<int>(score_w) + 2)
            << row.score.format() << std::fixed << std::setprecision(2) << v;
        out.unsetf(std::ios::fixed);
        if (is_best) out << "  <- lowest";
        if (is_best && color) out << "\033[0m";
        out << "\n";
    }
    out << "(lower is better)\n";
    return out.str();
}

}  // namespace cogload
