#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cogload/abstraction.hpp"
#include "cogload/pipeline.hpp"

namespace test_helpers {

inline std::string data_path(const std::string& rel) {
    return std::string(COGLOAD_DATA_DIR) + "/" + rel;
}

inline cogload::SourceProgram read_program(const std::string& rel) {
    std::string path = data_path(rel);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing test data: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return {buf.str(), path};
}

inline cogload::SourceProgram inline_program(const std::string& text) {
    return {text, "<test>"};
}

inline const std::vector<std::string>& corpus_files() {
    static const std::vector<std::string> files = {
        "corpus/revenue_task1.alg", "corpus/revenue_task2.alg",
        "corpus/revenue_task3.alg", "corpus/uib.alg", "corpus/uuknn.alg"};
    return files;
}

// Isomorphic copy with freshly shuffled node ids and node order; used to
// check that canonicalization ignores both.
inline cogload::OperationGraph permute_graph(const cogload::OperationGraph& g,
                                             std::mt19937_64& rng) {
    std::vector<int> old_ids;
    for (const auto& n : g.nodes) old_ids.push_back(n.id);
    std::vector<int> new_ids = old_ids;
    std::shuffle(new_ids.begin(), new_ids.end(), rng);
    std::map<int, int> remap;
    for (size_t i = 0; i < old_ids.size(); ++i) remap[old_ids[i]] = new_ids[i];

    cogload::OperationGraph out = g;
    for (auto& n : out.nodes) {
        n.id = remap[n.id];
        for (auto& in : n.inputs)
            if (!in.from_source) in.node = remap[in.node];
    }
    for (auto& [name, ref] : out.outputs)
        if (!ref.from_source) ref.node = remap[ref.node];
    std::shuffle(out.nodes.begin(), out.nodes.end(), rng);
    return out;
}

// Reference matcher: try every injective assignment of pattern nodes to
// target nodes and keep the ones satisfying the embedding rules. Slow but
// obviously correct; find_matches must agree exactly.
inline std::vector<cogload::Match> brute_force_matches(
    const cogload::OperationGraph& target, const cogload::Pattern& pattern) {
    using namespace cogload;
    const auto& pnodes = pattern.graph.nodes;
    std::vector<int> tids;
    for (const auto& n : target.nodes) tids.push_back(n.id);

    std::vector<Match> found;
    std::vector<int> chosen(pnodes.size(), -1);
    std::vector<bool> used(tids.size(), false);

    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == pnodes.size()) {
            Match m;
            m.schema = pattern.schema;
            for (size_t k = 0; k < pnodes.size(); ++k)
                m.binding[pnodes[k].id] = chosen[k];
            // placeholder consistency
            bool ok = true;
            for (size_t k = 0; k < pnodes.size() && ok; ++k) {
                const auto* t = target.find(chosen[k]);
                const auto& p = pnodes[k];
                if (t->op != p.op || t->inputs.size() != p.inputs.size()) {
                    ok = false;
                    break;
                }
                for (size_t a = 0; a < p.inputs.size() && ok; ++a) {
                    const auto& pi = p.inputs[a];
                    const auto& ti = t->inputs[a];
                    if (!pi.from_source) {
                        ok = !ti.from_source && ti.node == m.binding.at(pi.node);
                    } else {
                        auto [it, fresh] = m.inputs.emplace(pi.source, ti);
                        if (!fresh) ok = it->second == ti;
                    }
                }
            }
            if (!ok) return;
            // context uniformity
            const std::set<std::string>* first = nullptr;
            for (const auto& [p, t] : m.binding) {
                const auto& ctx = target.find(t)->contexts;
                if (!first)
                    first = &ctx;
                else if (ctx != *first)
                    return;
            }
            // boundary closure
            std::set<int> matched;
            for (const auto& [p, t] : m.binding) matched.insert(t);
            for (const auto& [name, ref] : m.inputs)
                if (!ref.from_source && matched.count(ref.node)) return;
            int out_t = m.binding.at(pattern.output_node);
            for (int t : matched) {
                if (t == out_t) continue;
                for (int c : target.consumers_of(t))
                    if (!matched.count(c)) return;
                for (const auto& [name, ref] : target.outputs)
                    if (!ref.from_source && ref.node == t) return;
            }
            for (const auto& [p, t] : m.binding) m.replaced.push_back(t);
            std::sort(m.replaced.begin(), m.replaced.end());
            found.push_back(std::move(m));
            return;
        }
        for (size_t t = 0; t < tids.size(); ++t) {
            if (used[t]) continue;
            used[t] = true;
            chosen[i] = tids[t];
            rec(i + 1);
            used[t] = false;
        }
    };
    rec(0);

    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.replaced != b.replaced) return a.replaced < b.replaced;
        return a.binding < b.binding;
    });
    return found;
}

// Returns the program with every declared size doubled.
inline cogload::Ast doubled_sizes(const cogload::Ast& program) {
    cogload::Ast out = program;
    for (auto& d : out.declarations)
        if (d.size) d.size = *d.size * 2;
    return out;
}

}  // namespace test_helpers
