#include "cogload/validate.hpp"

#include <map>
#include <set>
#include <unordered_map>

namespace cogload {

namespace {

enum class Ty { Scalar, Vector, Collection, Table, Unknown };

Ty from_decl(ValueType t) {
    switch (t) {
        case ValueType::Scalar: return Ty::Scalar;
        case ValueType::Vector: return Ty::Vector;
        case ValueType::Collection: return Ty::Collection;
        case ValueType::Table: return Ty::Table;
    }
    return Ty::Unknown;
}

struct BuiltinSig {
    size_t min_args;
    size_t max_args;
    Ty result;
};

const std::unordered_map<std::string, BuiltinSig>& builtin_sigs() {
    static const std::unordered_map<std::string, BuiltinSig> sigs = {
        {"add", {2, 8, Ty::Scalar}},     {"sub", {2, 8, Ty::Scalar}},
        {"mul", {2, 8, Ty::Scalar}},     {"div", {2, 8, Ty::Scalar}},
        {"sqrt", {1, 1, Ty::Scalar}},    {"square", {1, 1, Ty::Scalar}},
        {"abs", {1, 1, Ty::Scalar}},     {"compare", {2, 2, Ty::Scalar}},
        {"sum", {1, 1, Ty::Scalar}},     {"product", {1, 1, Ty::Scalar}},
        {"average", {1, 1, Ty::Scalar}}, {"weighted_average", {2, 2, Ty::Scalar}},
        {"sort", {1, 1, Ty::Vector}},    {"top_k_select", {2, 2, Ty::Collection}},
        {"broadcast_subtract", {2, 2, Ty::Vector}},
        {"dot_product", {2, 2, Ty::Scalar}},
        {"l2_norm", {1, 1, Ty::Scalar}},
        {"vector_subtract", {2, 2, Ty::Vector}},
    };
    return sigs;
}

struct VarInfo {
    Ty type = Ty::Unknown;
    bool is_input = false;
    bool is_loop_var = false;
};

class Checker {
public:
    explicit Checker(const Ast& ast) : ast_(ast) {}

    DiagnosticList run() {
        for (const auto& d : ast_.declarations) {
            if (vars_.count(d.name))
                report(d.pos, "DuplicateDeclaration", "'" + d.name + "' declared twice");
            vars_[d.name] = {from_decl(d.type), true, false};
        }
        check_body(ast_.statements);
        for (const auto& name : ast_.outputs) {
            if (!vars_.count(name))
                report({}, "UndeclaredVariable", "output '" + name + "' is never defined");
        }
        return std::move(diags_);
    }

private:
    const Ast& ast_;
    std::map<std::string, VarInfo> vars_;
    DiagnosticList diags_;

    void report(SourcePos pos, const std::string& code, const std::string& msg) {
        if (pos.line < 1) pos = {1, 1};
        diags_.push_back({pos, code, msg});
    }

    void check_body(const std::vector<Stmt>& stmts) {
        for (const auto& s : stmts) check_stmt(s);
    }

    void check_stmt(const Stmt& stmt) {
        if (const auto* a = std::get_if<Assign>(&stmt.node)) {
            // Whole-value assignments may produce vectors or collections
            // (sort, top_k_select); operands are still checked recursively.
            Ty rhs = type_of(a->value);
            define_target(a->target, rhs, stmt.pos);
        } else if (const auto* fe = std::get_if<ForEach>(&stmt.node)) {
            check_collection_ref(fe->collection, stmt.pos);
            auto guard = enter_loop_var(fe->loop_var, stmt.pos);
            for (const auto& c : fe->filters) check_comparison(c);
            check_body(fe->body);
            leave_loop_var(guard);
        } else if (const auto* acc = std::get_if<Accumulate>(&stmt.node)) {
            check_collection_ref(acc->collection, stmt.pos);
            auto guard = enter_loop_var(acc->loop_var, stmt.pos);
            for (const auto& c : acc->filters) check_comparison(c);
            check_expr(acc->value, Ty::Scalar);
            if (acc->weights) check_expr(*acc->weights, Ty::Scalar);
            leave_loop_var(guard);
            define_target(acc->target, Ty::Scalar, stmt.pos);
        } else {
            const auto& s = std::get<If>(stmt.node);
            for (const auto& c : s.condition) check_comparison(c);
            check_body(s.then_body);
            check_body(s.else_body);
        }
    }

    void check_comparison(const Comparison& c) {
        check_expr(c.lhs, Ty::Scalar);
        check_expr(c.rhs, Ty::Scalar);
    }

    void check_collection_ref(const std::string& name, SourcePos pos) {
        auto it = vars_.find(name);
        if (it == vars_.end()) {
            report(pos, "UndeclaredVariable", "collection '" + name + "' is not defined");
            return;
        }
        if (it->second.type != Ty::Collection && it->second.type != Ty::Vector &&
            it->second.type != Ty::Unknown)
            report(pos, "TypeMismatch", "'" + name + "' is not iterable");
    }

    std::string enter_loop_var(const std::string& name, SourcePos pos) {
        if (vars_.count(name)) {
            report(pos, "ShadowedVariable",
                   "loop variable '" + name + "' shadows an existing name");
            return "";
        }
        vars_[name] = {Ty::Scalar, false, true};
        return name;
    }

    void leave_loop_var(const std::string& name) {
        if (!name.empty()) vars_.erase(name);
    }

    void define_target(const LValue& lv, Ty value_ty, SourcePos pos) {
        for (const auto& idx : lv.indices) check_expr(idx, Ty::Scalar);
        auto it = vars_.find(lv.name);
        if (it != vars_.end()) {
            if (it->second.is_input || it->second.is_loop_var || lv.indices.empty()) {
                report(pos, "Redefinition",
                       "'" + lv.name + "' is already defined; the DSL is single-assignment");
                return;
            }
            return;  // repeated indexed writes share one lexical statement's producer
        }
        Ty ty = value_ty;
        if (lv.indices.size() == 1) ty = Ty::Vector;
        if (lv.indices.size() >= 2) ty = Ty::Table;
        vars_[lv.name] = {ty, false, false};
    }

    Ty check_expr(const Expr& e, Ty expected) {
        Ty got = type_of(e);
        if (expected == Ty::Scalar &&
            (got == Ty::Vector || got == Ty::Table || got == Ty::Collection)) {
            report(e.pos, "TypeMismatch",
                   to_name(got) + " passed where scalar expected");
        }
        return got;
    }

    static std::string to_name(Ty t) {
        switch (t) {
            case Ty::Scalar: return "scalar";
            case Ty::Vector: return "vector";
            case Ty::Collection: return "collection";
            case Ty::Table: return "table";
            default: return "value";
        }
    }

    Ty type_of(const Expr& e) {
        if (std::holds_alternative<Literal>(e.node)) return Ty::Scalar;
        if (const auto* ref = std::get_if<VarRef>(&e.node)) {
            auto it = vars_.find(ref->name);
            if (it == vars_.end()) {
                report(e.pos, "UndeclaredVariable",
                       "'" + ref->name + "' used before definition");
                return Ty::Unknown;
            }
            for (const auto& idx : ref->indices) check_expr(idx, Ty::Scalar);
            if (ref->indices.empty()) return it->second.type;
            Ty base = it->second.type;
            if (base == Ty::Scalar)
                report(e.pos, "TypeMismatch", "'" + ref->name + "' is not indexable");
            return Ty::Scalar;
        }
        if (const auto* call = std::get_if<Call>(&e.node)) {
            auto sig = builtin_sigs().find(call->callee);
            Ty result = Ty::Unknown;
            if (sig != builtin_sigs().end()) {
                result = sig->second.result;
                if (call->args.size() < sig->second.min_args ||
                    call->args.size() > sig->second.max_args)
                    report(e.pos, "ArityMismatch",
                           "'" + call->callee + "' called with " +
                               std::to_string(call->args.size()) + " argument(s)");
            }
            for (const auto& arg : call->args) type_of(arg);
            return result;
        }
        const auto& chain = std::get<NaryOp>(e.node);
        for (const auto& operand : chain.operands) check_expr(operand, Ty::Scalar);
        return Ty::Scalar;
    }
};

}  // namespace

bool is_primitive_op(const std::string& name) {
    static const std::set<std::string> prims = {"add", "sub", "mul", "div",
                                               "sqrt", "square", "abs", "compare"};
    return prims.count(name) > 0;
}

bool is_builtin_op(const std::string& name) {
    return builtin_sigs().count(name) > 0;
}

DiagnosticList validate(const Ast& ast) { return Checker(ast).run(); }

}  // namespace cogload
