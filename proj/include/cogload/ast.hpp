#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cogload/diagnostics.hpp"

namespace cogload {

// Value kinds the DSL knows about. Tables are rating matrices; indexing a
// table or vector yields a scalar.
enum class ValueType { Scalar, Vector, Collection, Table };

std::string to_string(ValueType t);

struct Decl {
    std::string name;
    ValueType type = ValueType::Scalar;
    bool subset = false;                    // collection over a data subset
    std::optional<std::string> subset_of;   // parent collection, informational
    std::optional<long> size;               // declared cardinality, never scored
    SourcePos pos;
};

struct Expr;

struct Literal {
    double value = 0.0;
    std::string text;
};

struct VarRef {
    std::string name;
    std::vector<Expr> indices;  // empty for a plain variable read
};

struct Call {
    std::string callee;
    std::vector<Expr> args;
};

// Folded operator chain: a+b+c is one add node, a-b-c one sub node. Mixed
// chains split at operator changes, so a-b+c nests sub inside add.
struct NaryOp {
    std::string op;  // add | sub | mul | div
    std::vector<Expr> operands;
};

struct Expr {
    std::variant<Literal, VarRef, Call, NaryOp> node;
    SourcePos pos;
};

// One atomic comparison; guards are conjunction lists of these.
struct Comparison {
    Expr lhs;
    std::string op;  // > < >= <= == !=
    Expr rhs;
    SourcePos pos;
    std::string text;  // normalized source text, used as the context key
};

struct Stmt;

struct LValue {
    std::string name;
    std::vector<Expr> indices;
    SourcePos pos;
};

struct Assign {
    LValue target;
    Expr value;
    std::string text;
};

struct ForEach {
    std::string loop_var;
    std::string collection;
    std::vector<Comparison> filters;
    std::vector<Stmt> body;
};

struct Accumulate {
    LValue target;
    std::string op;  // sum | product | average | weighted_average
    std::string loop_var;
    std::string collection;
    std::vector<Comparison> filters;
    Expr value;
    std::optional<Expr> weights;  // weighted_average only
    std::string text;
};

struct If {
    std::vector<Comparison> condition;
    std::vector<Stmt> then_body;
    std::vector<Stmt> else_body;
};

struct Stmt {
    std::variant<Assign, ForEach, Accumulate, If> node;
    SourcePos pos;
};

struct Ast {
    std::string name;
    std::vector<Decl> declarations;
    std::vector<Stmt> statements;
    std::vector<std::string> outputs;
};

// Reconstructs DSL text; parse(pretty_print(ast)) is structurally identical
// to ast.
std::string pretty_print(const Ast& ast);
std::string pretty_print(const Expr& expr);
std::string pretty_print(const Comparison& cmp);

bool structurally_equal(const Ast& a, const Ast& b);

}  // namespace cogload
