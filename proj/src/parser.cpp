#include "cogload/parser.hpp"

#include <cstdlib>

namespace cogload {

namespace {

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

    Ast parse_program() {
        Ast ast;
        expect_keyword("algorithm");
        ast.name = expect_ident("algorithm name");
        while (peek().is(TokenKind::Keyword, "input")) ast.declarations.push_back(parse_decl());
        while (!peek().is(TokenKind::Keyword, "output")) {
            if (peek().kind == TokenKind::End)
                fail("expected statement or 'output'");
            ast.statements.push_back(parse_stmt());
        }
        expect_keyword("output");
        ast.outputs.push_back(expect_ident("output variable"));
        while (peek().is(TokenKind::Symbol, ",")) {
            next();
            ast.outputs.push_back(expect_ident("output variable"));
        }
        if (peek().kind != TokenKind::End) fail("expected end of program");
        return ast;
    }

private:
    const std::vector<Token>& toks_;
    size_t idx_ = 0;

    const Token& peek(size_t ahead = 0) const {
        size_t i = idx_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& next() { return toks_[idx_ < toks_.size() - 1 ? idx_++ : idx_]; }

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(peek().pos,
                         expected + ", got '" +
                             (peek().kind == TokenKind::End ? "<end>" : peek().text) + "'");
    }

    void expect_keyword(const std::string& kw) {
        if (!peek().is(TokenKind::Keyword, kw)) fail("expected '" + kw + "'");
        next();
    }
    void expect_symbol(const std::string& sym) {
        if (!peek().is(TokenKind::Symbol, sym)) fail("expected '" + sym + "'");
        next();
    }
    std::string expect_ident(const std::string& what) {
        if (peek().kind != TokenKind::Ident) fail("expected " + what);
        return next().text;
    }

    Decl parse_decl() {
        Decl d;
        d.pos = peek().pos;
        expect_keyword("input");
        d.name = expect_ident("input name");
        expect_symbol(":");
        if (peek().kind != TokenKind::Keyword) fail("expected type");
        std::string ty = next().text;
        if (ty == "scalar") d.type = ValueType::Scalar;
        else if (ty == "vector") d.type = ValueType::Vector;
        else if (ty == "collection") d.type = ValueType::Collection;
        else if (ty == "table") d.type = ValueType::Table;
        else fail("expected one of scalar/vector/collection/table");
        if (peek().is(TokenKind::Keyword, "subset")) {
            if (d.type != ValueType::Collection) fail("'subset' only applies to collections");
            next();
            d.subset = true;
            if (peek().is(TokenKind::Keyword, "of")) {
                next();
                d.subset_of = expect_ident("parent collection");
            }
        }
        if (peek().is(TokenKind::Keyword, "size")) {
            next();
            if (peek().kind != TokenKind::Number) fail("expected size value");
            d.size = std::strtol(next().text.c_str(), nullptr, 10);
        }
        return d;
    }

    std::vector<Stmt> parse_block() {
        expect_symbol("{");
        std::vector<Stmt> body;
        while (!peek().is(TokenKind::Symbol, "}")) {
            if (peek().kind == TokenKind::End) fail("expected statement or '}'");
            body.push_back(parse_stmt());
        }
        next();
        return body;
    }

    Stmt parse_stmt() {
        SourcePos pos = peek().pos;
        if (peek().is(TokenKind::Keyword, "for")) return {parse_foreach(), pos};
        if (peek().is(TokenKind::Keyword, "if")) return {parse_if(), pos};
        return {parse_assign_like(), pos};
    }

    ForEach parse_foreach() {
        ForEach fe;
        expect_keyword("for");
        expect_keyword("each");
        fe.loop_var = expect_ident("loop variable");
        expect_keyword("in");
        fe.collection = expect_ident("collection name");
        fe.filters = parse_optional_where();
        fe.body = parse_block();
        return fe;
    }

    If parse_if() {
        If s;
        expect_keyword("if");
        s.condition = parse_conjunction();
        s.then_body = parse_block();
        if (peek().is(TokenKind::Keyword, "else")) {
            next();
            s.else_body = parse_block();
        }
        return s;
    }

    std::variant<Assign, ForEach, Accumulate, If> parse_assign_like() {
        LValue target = parse_lvalue();
        expect_symbol("=");
        if (peek().kind == TokenKind::Keyword &&
            (peek().text == "sum" || peek().text == "product" ||
             peek().text == "average" || peek().text == "weighted_average") &&
            peek(1).is(TokenKind::Keyword, "over")) {
            Accumulate acc;
            acc.target = std::move(target);
            acc.op = next().text;
            expect_keyword("over");
            acc.loop_var = expect_ident("loop variable");
            expect_keyword("in");
            acc.collection = expect_ident("collection name");
            acc.filters = parse_optional_where();
            expect_keyword("of");
            acc.value = parse_expr();
            if (peek().is(TokenKind::Keyword, "weights")) {
                next();
                acc.weights = parse_expr();
            }
            if (acc.op == "weighted_average" && !acc.weights)
                fail("weighted_average requires a 'weights' expression");
            acc.text = pretty_print_stmt(acc);
            return acc;
        }
        Assign a;
        a.target = std::move(target);
        a.value = parse_expr();
        std::string lhs = a.target.name;
        if (!a.target.indices.empty()) {
            lhs += "[";
            for (size_t i = 0; i < a.target.indices.size(); ++i) {
                if (i) lhs += ", ";
                lhs += ::cogload::pretty_print(a.target.indices[i]);
            }
            lhs += "]";
        }
        a.text = lhs + " = " + ::cogload::pretty_print(a.value);
        return a;
    }

    LValue parse_lvalue() {
        LValue lv;
        lv.pos = peek().pos;
        lv.name = expect_ident("variable name");
        if (peek().is(TokenKind::Symbol, "[")) lv.indices = parse_index_list();
        return lv;
    }

    std::vector<Expr> parse_index_list() {
        expect_symbol("[");
        std::vector<Expr> idx;
        idx.push_back(parse_expr());
        while (peek().is(TokenKind::Symbol, ",")) {
            next();
            idx.push_back(parse_expr());
        }
        expect_symbol("]");
        return idx;
    }

    std::vector<Comparison> parse_optional_where() {
        if (!peek().is(TokenKind::Keyword, "where")) return {};
        next();
        return parse_conjunction();
    }

    std::vector<Comparison> parse_conjunction() {
        std::vector<Comparison> cmps;
        cmps.push_back(parse_comparison());
        while (peek().is(TokenKind::Keyword, "and")) {
            next();
            cmps.push_back(parse_comparison());
        }
        return cmps;
    }

    Comparison parse_comparison() {
        Comparison c;
        c.pos = peek().pos;
        c.lhs = parse_expr();
        if (peek().kind != TokenKind::Symbol ||
            (peek().text != ">" && peek().text != "<" && peek().text != ">=" &&
             peek().text != "<=" && peek().text != "==" && peek().text != "!="))
            fail("expected comparison operator");
        c.op = next().text;
        c.rhs = parse_expr();
        c.text = ::cogload::pretty_print(c);
        return c;
    }

    // additive level; folds maximal runs of the same operator into one node
    Expr parse_expr() {
        SourcePos pos = peek().pos;
        Expr cur = parse_term();
        while (peek().is(TokenKind::Symbol, "+") || peek().is(TokenKind::Symbol, "-")) {
            std::string sym = peek().text;
            NaryOp chain;
            chain.op = (sym == "+") ? "add" : "sub";
            chain.operands.push_back(std::move(cur));
            while (peek().is(TokenKind::Symbol, sym)) {
                next();
                chain.operands.push_back(parse_term());
            }
            cur = Expr{std::move(chain), pos};
        }
        return cur;
    }

    Expr parse_term() {
        SourcePos pos = peek().pos;
        Expr cur = parse_primary();
        while (peek().is(TokenKind::Symbol, "*") || peek().is(TokenKind::Symbol, "/")) {
            std::string sym = peek().text;
            NaryOp chain;
            chain.op = (sym == "*") ? "mul" : "div";
            chain.operands.push_back(std::move(cur));
            while (peek().is(TokenKind::Symbol, sym)) {
                next();
                chain.operands.push_back(parse_primary());
            }
            cur = Expr{std::move(chain), pos};
        }
        return cur;
    }

    Expr parse_primary() {
        SourcePos pos = peek().pos;
        if (peek().is(TokenKind::Symbol, "(")) {
            next();
            Expr e = parse_expr();
            expect_symbol(")");
            return e;
        }
        if (peek().kind == TokenKind::Number) {
            Literal lit;
            lit.text = peek().text;
            lit.value = std::strtod(next().text.c_str(), nullptr);
            return Expr{std::move(lit), pos};
        }
        if (peek().kind == TokenKind::Ident) {
            std::string name = next().text;
            if (peek().is(TokenKind::Symbol, "(")) {
                Call call;
                call.callee = std::move(name);
                next();
                if (!peek().is(TokenKind::Symbol, ")")) {
                    call.args.push_back(parse_expr());
                    while (peek().is(TokenKind::Symbol, ",")) {
                        next();
                        call.args.push_back(parse_expr());
                    }
                }
                expect_symbol(")");
                return Expr{std::move(call), pos};
            }
            VarRef ref;
            ref.name = std::move(name);
            if (peek().is(TokenKind::Symbol, "[")) ref.indices = parse_index_list();
            return Expr{std::move(ref), pos};
        }
        fail("expected expression");
    }

    static std::string pretty_print_stmt(const Accumulate& acc) {
        std::string out = acc.target.name + " = " + acc.op + " over " + acc.loop_var +
                          " in " + acc.collection;
        if (!acc.filters.empty()) {
            out += " where ";
            for (size_t i = 0; i < acc.filters.size(); ++i) {
                if (i) out += " and ";
                out += acc.filters[i].text;
            }
        }
        out += " of " + ::cogload::pretty_print(acc.value);
        if (acc.weights) out += " weights " + ::cogload::pretty_print(*acc.weights);
        return out;
    }
};

}  // namespace

Ast parse(const std::vector<Token>& tokens) { return Parser(tokens).parse_program(); }

Ast parse_program(const SourceProgram& source) { return parse(tokenize(source)); }

}  // namespace cogload
