#include "cogload/cfg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cogload {

namespace {

class Builder {
public:
    explicit Builder(const Ast& ast) : ast_(ast) {}

    ControlFlowGraph build() {
        cfg_.program = ast_;
        cfg_.start_id = add_node(CfgKind::Start);
        int tail = lower_body(ast_.statements, cfg_.start_id, "");
        cfg_.end_id = add_node(CfgKind::End);
        add_edge(tail, cfg_.end_id, "");
        return std::move(cfg_);
    }

private:
    const Ast& ast_;
    ControlFlowGraph cfg_;

    int add_node(CfgKind kind) {
        CfgNode n;
        n.id = static_cast<int>(cfg_.nodes.size());
        n.kind = kind;
        cfg_.nodes.push_back(std::move(n));
        return cfg_.nodes.back().id;
    }

    void add_edge(int from, int to, const std::string& label, bool back = false) {
        cfg_.edges.push_back({from, to, label, back});
    }

    // Lowers a statement list; returns the node the follower should hang off.
    int lower_body(const std::vector<Stmt>& stmts, int pred, const std::string& edge_label) {
        int cur = pred;
        std::string label = edge_label;
        int open_block = -1;  // current basic block collecting plain assignments

        auto seal = [&]() { open_block = -1; };
        auto attach = [&](int node) {
            add_edge(cur, node, label);
            label.clear();
            cur = node;
        };

        for (const auto& stmt : stmts) {
            if (const auto* a = std::get_if<Assign>(&stmt.node)) {
                if (open_block < 0) {
                    int b = add_node(CfgKind::Block);
                    attach(b);
                    open_block = b;
                }
                cfg_.nodes[static_cast<size_t>(open_block)].labels.push_back(a->text);
            } else if (const auto* fe = std::get_if<ForEach>(&stmt.node)) {
                seal();
                int header = add_node(CfgKind::Iteration);
                cfg_.nodes[static_cast<size_t>(header)].loop_var = fe->loop_var;
                cfg_.nodes[static_cast<size_t>(header)].collection = fe->collection;
                attach(header);
                int body_pred = lower_filters(fe->filters, header);
                int body_tail =
                    lower_body(fe->body, body_pred, body_pred == header ? "iterate" : "true");
                add_edge(body_tail, header, "", /*back=*/true);
                label = "done";
            } else if (const auto* acc = std::get_if<Accumulate>(&stmt.node)) {
                seal();
                int init = add_node(CfgKind::Block);
                cfg_.nodes[static_cast<size_t>(init)].labels.push_back("init " + acc->target.name);
                attach(init);
                int header = add_node(CfgKind::Iteration);
                cfg_.nodes[static_cast<size_t>(header)].loop_var = acc->loop_var;
                cfg_.nodes[static_cast<size_t>(header)].collection = acc->collection;
                add_edge(init, header, "");
                cur = header;
                int body_pred = lower_filters(acc->filters, header);
                int body = add_node(CfgKind::Block);
                cfg_.nodes[static_cast<size_t>(body)].labels.push_back(
                    acc->target.name + " " + acc->op + "= " + pretty_print(acc->value));
                add_edge(body_pred, body, body_pred == header ? "iterate" : "true");
                add_edge(body, header, "", /*back=*/true);
                label = "done";
            } else {
                seal();
                const auto& s = std::get<If>(stmt.node);
                int sel = lower_condition_chain(s.condition, cur, label);
                label.clear();
                int merge = add_node(CfgKind::Block);
                cfg_.nodes[static_cast<size_t>(merge)].labels.push_back("join");
                int then_tail = lower_body(s.then_body, sel, "true");
                add_edge(then_tail, merge, "");
                if (s.else_body.empty()) {
                    add_edge(sel, merge, "false");
                } else {
                    int else_tail = lower_body(s.else_body, sel, "false");
                    add_edge(else_tail, merge, "");
                }
                cur = merge;
            }
        }
        (void)edge_label;
        return cur;
    }

    // Filter conjuncts become nested selections inside the loop body;
    // a failed conjunct skips to the next element (edge back to header).
    int lower_filters(const std::vector<Comparison>& filters, int header) {
        int cur = header;
        std::string lbl = "iterate";
        for (const auto& f : filters) {
            int sel = add_node(CfgKind::Selection);
            cfg_.nodes[static_cast<size_t>(sel)].guard = f.text;
            add_edge(cur, sel, lbl);
            add_edge(sel, header, "false", /*back=*/true);
            cur = sel;
            lbl = "true";
        }
        return cur;
    }

    int lower_condition_chain(const std::vector<Comparison>& cmps, int pred,
                              const std::string& label) {
        // Conjunctions collapse into one selection node for CFG purposes;
        // the conjunct list is kept in the guard text.
        int sel = add_node(CfgKind::Selection);
        std::string text;
        for (size_t i = 0; i < cmps.size(); ++i) {
            if (i) text += " and ";
            text += cmps[i].text;
        }
        cfg_.nodes[static_cast<size_t>(sel)].guard = text;
        add_edge(pred, sel, label);
        return sel;
    }
};

// --- structural reduction ------------------------------------------------

struct RGraph {
    std::map<int, std::set<int>> succ;
    std::map<int, std::set<int>> pred;
    std::set<int> nodes;

    void remove_edge(int a, int b) {
        succ[a].erase(b);
        pred[b].erase(a);
    }
    void add_edge(int a, int b) {
        if (a == b) return;  // collapsing produced a resolved self-loop
        succ[a].insert(b);
        pred[b].insert(a);
    }
    void merge_into(int keep, int gone) {
        auto outs = succ[gone];
        auto ins = pred[gone];
        for (int s : outs) remove_edge(gone, s);
        for (int p : ins) remove_edge(p, gone);
        for (int s : outs)
            if (s != keep) add_edge(keep, s);
        for (int p : ins)
            if (p != keep) add_edge(p, keep);
        nodes.erase(gone);
        succ.erase(gone);
        pred.erase(gone);
    }
};

}  // namespace

ControlFlowGraph build_cfg(const Ast& ast) { return Builder(ast).build(); }

bool verify_structured(const ControlFlowGraph& cfg, DiagnosticList* diags) {
    RGraph g;
    for (const auto& n : cfg.nodes) g.nodes.insert(n.id);
    for (const auto& e : cfg.edges) g.add_edge(e.from, e.to);

    int start = cfg.start_id;
    int end = cfg.end_id;

    bool changed = true;
    while (changed) {
        changed = false;
        for (int n : std::set<int>(g.nodes)) {
            if (!g.nodes.count(n)) continue;
            // self-loop removal (collapsed iteration body)
            if (g.succ[n].count(n)) {
                g.remove_edge(n, n);
                changed = true;
            }
            // sequence: unique successor with unique predecessor
            if (g.succ[n].size() == 1) {
                int s = *g.succ[n].begin();
                if (s != n && s != start && s != end && n != end &&
                    g.pred[s].size() == 1) {
                    g.merge_into(n, s);
                    changed = true;
                    continue;
                }
            }
            // selection/iteration: two successors that reconverge
            if (g.succ[n].size() == 2) {
                auto it = g.succ[n].begin();
                int a = *it++;
                int b = *it;
                // single-entry single-exit branch hanging off n only
                auto branch_ok = [&](int x) {
                    return x != start && x != end && g.pred[x].size() == 1 &&
                           g.succ[x].size() == 1 && *g.succ[x].begin() != x;
                };
                // diamond: n -> a -> m, n -> b -> m
                if (branch_ok(a) && branch_ok(b) &&
                    *g.succ[a].begin() == *g.succ[b].begin() && *g.succ[a].begin() != n) {
                    g.merge_into(n, a);
                    g.merge_into(n, b);
                    changed = true;
                    continue;
                }
                // triangle: n -> a -> b and n -> b; while: n -> a -> n
                if (branch_ok(a) && (*g.succ[a].begin() == b || *g.succ[a].begin() == n)) {
                    g.merge_into(n, a);
                    changed = true;
                    continue;
                }
                if (branch_ok(b) && (*g.succ[b].begin() == a || *g.succ[b].begin() == n)) {
                    g.merge_into(n, b);
                    changed = true;
                    continue;
                }
            }
        }
    }

    bool ok = g.nodes.size() == 2 && g.nodes.count(start) && g.nodes.count(end) &&
              g.succ[start].count(end);
    if (!ok && diags) {
        diags->push_back({{1, 1}, "Unstructured",
                          "control flow graph does not reduce to nested "
                          "sequence/selection/iteration regions (" +
                              std::to_string(g.nodes.size()) + " nodes left)"});
    }
    return ok;
}

}  // namespace cogload
