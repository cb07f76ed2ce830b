#include "cogload/opgraph.hpp"

#include <algorithm>
#include <optional>

namespace cogload {

const OperationNode* OperationGraph::find(int id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

OperationNode* OperationGraph::find(int id) {
    for (auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

std::vector<int> OperationGraph::consumers_of(int id) const {
    std::vector<int> out;
    for (const auto& n : nodes)
        for (const auto& in : n.inputs)
            if (!in.from_source && in.node == id) {
                out.push_back(n.id);
                break;
            }
    return out;
}

int context_count(const OperationNode& n) { return static_cast<int>(n.contexts.size()); }

int parent_count(const OperationNode& n) {
    std::set<int> parents;
    for (const auto& in : n.inputs)
        if (!in.from_source) parents.insert(in.node);
    return static_cast<int>(parents.size());
}

namespace {

void push_unique(std::vector<InputRef>& inputs, const InputRef& ref) {
    if (std::find(inputs.begin(), inputs.end(), ref) == inputs.end())
        inputs.push_back(ref);
}

class Flattener {
public:
    explicit Flattener(const Ast& ast) : ast_(ast) {}

    OperationGraph run() {
        graph_.algorithm = ast_.name;
        for (const auto& d : ast_.declarations)
            env_[d.name] = InputRef{true, -1, d.name};
        walk(ast_.statements);
        for (const auto& name : ast_.outputs)
            graph_.outputs.emplace_back(name, resolve(name));
        return std::move(graph_);
    }

private:
    const Ast& ast_;
    OperationGraph graph_;
    std::map<std::string, InputRef> env_;        // variable -> producer
    std::map<std::string, std::string> loop_vars_;  // loop var -> collection
    std::vector<ScopeRef> scopes_;

    InputRef resolve(const std::string& name) {
        auto lv = loop_vars_.find(name);
        if (lv != loop_vars_.end()) return resolve(lv->second);
        auto it = env_.find(name);
        if (it == env_.end())
            throw InternalError("flatten: '" + name + "' has no producer");
        return it->second;
    }

    InputRef make_node(const std::string& op, std::vector<InputRef> inputs,
                       const std::string& description, const std::string& target = "") {
        OperationNode n;
        n.id = graph_.next_id++;
        n.op = op;
        n.target = target;
        n.description = description;
        n.inputs = std::move(inputs);
        n.scopes = scopes_;
        graph_.nodes.push_back(std::move(n));
        return InputRef{false, graph_.nodes.back().id, ""};
    }

    // Returns the producer of the expression's value, or nothing for a
    // literal. Only the base variable of an indexed read matters; the index
    // expressions address elements and add no dependencies of their own.
    std::optional<InputRef> flatten_expr(const Expr& e) {
        if (std::holds_alternative<Literal>(e.node)) return std::nullopt;
        if (const auto* ref = std::get_if<VarRef>(&e.node)) return resolve(ref->name);
        std::string op;
        const std::vector<Expr>* operands = nullptr;
        if (const auto* call = std::get_if<Call>(&e.node)) {
            op = call->callee;
            operands = &call->args;
        } else {
            const auto& chain = std::get<NaryOp>(e.node);
            op = chain.op;
            operands = &chain.operands;
        }
        std::vector<InputRef> inputs;
        for (const auto& operand : *operands)
            if (auto dep = flatten_expr(operand)) push_unique(inputs, *dep);
        return make_node(op, std::move(inputs), pretty_print(e));
    }

    void walk(const std::vector<Stmt>& stmts) {
        for (const auto& s : stmts) walk(s);
    }

    void walk(const Stmt& stmt) {
        if (const auto* a = std::get_if<Assign>(&stmt.node)) {
            auto value = flatten_expr(a->value);
            if (value && !value->from_source) {
                auto* n = graph_.find(value->node);
                if (n->target.empty()) {
                    n->target = a->target.name;
                    n->description = a->text;
                }
            }
            // Aliases (x = y, x = lit) define the name without a node.
            env_[a->target.name] =
                value.value_or(InputRef{true, -1, "$" + a->target.name});
        } else if (const auto* fe = std::get_if<ForEach>(&stmt.node)) {
            size_t depth = scopes_.size();
            scopes_.push_back({ScopeRef::Kind::Loop, fe->collection, ""});
            for (const auto& f : fe->filters)
                scopes_.push_back({ScopeRef::Kind::Guard, "", f.text});
            loop_vars_[fe->loop_var] = fe->collection;
            walk(fe->body);
            loop_vars_.erase(fe->loop_var);
            scopes_.resize(depth);
        } else if (const auto* acc = std::get_if<Accumulate>(&stmt.node)) {
            size_t depth = scopes_.size();
            scopes_.push_back({ScopeRef::Kind::Loop, acc->collection, ""});
            for (const auto& f : acc->filters)
                scopes_.push_back({ScopeRef::Kind::Guard, "", f.text});
            loop_vars_[acc->loop_var] = acc->collection;
            std::vector<InputRef> inputs;
            if (auto dep = flatten_expr(acc->value)) push_unique(inputs, *dep);
            if (acc->weights)
                if (auto dep = flatten_expr(*acc->weights)) push_unique(inputs, *dep);
            push_unique(inputs, resolve(acc->collection));
            auto node = make_node(acc->op, std::move(inputs), acc->text, acc->target.name);
            loop_vars_.erase(acc->loop_var);
            scopes_.resize(depth);
            env_[acc->target.name] = node;
        } else {
            const auto& s = std::get<If>(stmt.node);
            size_t depth = scopes_.size();
            for (const auto& c : s.condition)
                scopes_.push_back({ScopeRef::Kind::Guard, "", c.text});
            walk(s.then_body);
            scopes_.resize(depth);
            if (!s.else_body.empty()) {
                std::string text;
                for (size_t i = 0; i < s.condition.size(); ++i) {
                    if (i) text += " and ";
                    text += s.condition[i].text;
                }
                scopes_.push_back({ScopeRef::Kind::Guard, "", "not (" + text + ")"});
                walk(s.else_body);
                scopes_.resize(depth);
            }
        }
    }
};

}  // namespace

OperationGraph flatten(const ControlFlowGraph& cfg) {
    return Flattener(cfg.program).run();
}

void assign_contexts(OperationGraph& graph, const Ast& program) {
    std::map<std::string, const Decl*> decls;
    for (const auto& d : program.declarations) decls[d.name] = &d;

    auto add = [&](OperationNode& n, const ContextLabel& label) {
        n.contexts.insert(label.key);
        graph.contexts.emplace(label.key, label);
    };

    for (auto& n : graph.nodes) {
        for (const auto& scope : n.scopes) {
            if (scope.kind == ScopeRef::Kind::Guard) {
                add(n, {"pred:" + scope.guard, scope.guard, "predicate"});
                continue;
            }
            auto it = decls.find(scope.collection);
            bool whole_input = it != decls.end() && !it->second->subset;
            if (whole_input) continue;  // full traversal asks nothing extra
            add(n, {"subset:" + scope.collection, scope.collection, "subset"});
        }
    }
}

}  // namespace cogload
