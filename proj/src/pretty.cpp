#include <sstream>

#include "cogload/ast.hpp"

namespace cogload {

std::string to_string(ValueType t) {
    switch (t) {
        case ValueType::Scalar: return "scalar";
        case ValueType::Vector: return "vector";
        case ValueType::Collection: return "collection";
        case ValueType::Table: return "table";
    }
    return "?";
}

std::string format_diagnostic(const Diagnostic& d, const std::string& origin) {
    std::ostringstream out;
    out << origin << ":" << d.pos.line << ":" << d.pos.column << ": " << d.code
        << ": " << d.message;
    return out.str();
}

namespace {

int precedence(const std::string& op) { return (op == "mul" || op == "div") ? 2 : 1; }

std::string op_symbol(const std::string& op) {
    if (op == "add") return " + ";
    if (op == "sub") return " - ";
    if (op == "mul") return " * ";
    return " / ";
}

void print_expr(std::ostream& out, const Expr& e, int parent_prec);

void print_indices(std::ostream& out, const std::vector<Expr>& idx) {
    if (idx.empty()) return;
    out << "[";
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i) out << ", ";
        print_expr(out, idx[i], 0);
    }
    out << "]";
}

void print_expr(std::ostream& out, const Expr& e, int parent_prec) {
    if (const auto* lit = std::get_if<Literal>(&e.node)) {
        out << lit->text;
    } else if (const auto* ref = std::get_if<VarRef>(&e.node)) {
        out << ref->name;
        print_indices(out, ref->indices);
    } else if (const auto* call = std::get_if<Call>(&e.node)) {
        out << call->callee << "(";
        for (size_t i = 0; i < call->args.size(); ++i) {
            if (i) out << ", ";
            print_expr(out, call->args[i], 0);
        }
        out << ")";
    } else {
        const auto& chain = std::get<NaryOp>(e.node);
        int prec = precedence(chain.op);
        bool parens = parent_prec >= prec;
        if (parens) out << "(";
        for (size_t i = 0; i < chain.operands.size(); ++i) {
            if (i) out << op_symbol(chain.op);
            print_expr(out, chain.operands[i], prec);
        }
        if (parens) out << ")";
    }
}

void print_stmts(std::ostream& out, const std::vector<Stmt>& stmts, int indent);

void print_conjunction(std::ostream& out, const std::vector<Comparison>& cmps) {
    for (size_t i = 0; i < cmps.size(); ++i) {
        if (i) out << " and ";
        out << pretty_print(cmps[i]);
    }
}

void print_block(std::ostream& out, const std::vector<Stmt>& body, int indent) {
    out << "{\n";
    print_stmts(out, body, indent + 1);
    for (int i = 0; i < indent; ++i) out << "  ";
    out << "}";
}

void print_stmt(std::ostream& out, const Stmt& stmt, int indent) {
    for (int i = 0; i < indent; ++i) out << "  ";
    if (const auto* a = std::get_if<Assign>(&stmt.node)) {
        out << a->target.name;
        print_indices(out, a->target.indices);
        out << " = ";
        print_expr(out, a->value, 0);
    } else if (const auto* fe = std::get_if<ForEach>(&stmt.node)) {
        out << "for each " << fe->loop_var << " in " << fe->collection;
        if (!fe->filters.empty()) {
            out << " where ";
            print_conjunction(out, fe->filters);
        }
        out << " ";
        print_block(out, fe->body, indent);
    } else if (const auto* acc = std::get_if<Accumulate>(&stmt.node)) {
        out << acc->target.name;
        print_indices(out, acc->target.indices);
        out << " = " << acc->op << " over " << acc->loop_var << " in " << acc->collection;
        if (!acc->filters.empty()) {
            out << " where ";
            print_conjunction(out, acc->filters);
        }
        out << " of ";
        print_expr(out, acc->value, 0);
        if (acc->weights) {
            out << " weights ";
            print_expr(out, *acc->weights, 0);
        }
    } else {
        const auto& s = std::get<If>(stmt.node);
        out << "if ";
        print_conjunction(out, s.condition);
        out << " ";
        print_block(out, s.then_body, indent);
        if (!s.else_body.empty()) {
            out << " else ";
            print_block(out, s.else_body, indent);
        }
    }
    out << "\n";
}

void print_stmts(std::ostream& out, const std::vector<Stmt>& stmts, int indent) {
    for (const auto& s : stmts) print_stmt(out, s, indent);
}

}  // namespace

std::string pretty_print(const Expr& expr) {
    std::ostringstream out;
    print_expr(out, expr, 0);
    return out.str();
}

std::string pretty_print(const Comparison& cmp) {
    std::ostringstream out;
    print_expr(out, cmp.lhs, 0);
    out << " " << cmp.op << " ";
    print_expr(out, cmp.rhs, 0);
    return out.str();
}

std::string pretty_print(const Ast& ast) {
    std::ostringstream out;
    out << "algorithm " << ast.name << "\n\n";
    for (const auto& d : ast.declarations) {
        out << "input " << d.name << " : " << to_string(d.type);
        if (d.subset) {
            out << " subset";
            if (d.subset_of) out << " of " << *d.subset_of;
        }
        if (d.size) out << " size " << *d.size;
        out << "\n";
    }
    out << "\n";
    print_stmts(out, ast.statements, 0);
    out << "\noutput ";
    for (size_t i = 0; i < ast.outputs.size(); ++i) {
        if (i) out << ", ";
        out << ast.outputs[i];
    }
    out << "\n";
    return out.str();
}

bool structurally_equal(const Ast& a, const Ast& b) {
    return pretty_print(a) == pretty_print(b);
}

}  // namespace cogload
