#include "cogload/schema_kb.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "cogload/opgraph.hpp"
#include "cogload/parser.hpp"
#include "cogload/validate.hpp"

namespace cogload {

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> collect_ops(const Ast& ast);

void collect_ops_expr(const Expr& e, std::vector<std::string>& out) {
    if (const auto* call = std::get_if<Call>(&e.node)) {
        out.push_back(call->callee);
        for (const auto& a : call->args) collect_ops_expr(a, out);
    } else if (const auto* chain = std::get_if<NaryOp>(&e.node)) {
        out.push_back(chain->op);
        for (const auto& operand : chain->operands) collect_ops_expr(operand, out);
    }
}

void collect_ops_body(const std::vector<Stmt>& stmts, std::vector<std::string>& out) {
    for (const auto& stmt : stmts) {
        if (const auto* a = std::get_if<Assign>(&stmt.node)) {
            collect_ops_expr(a->value, out);
        } else if (const auto* fe = std::get_if<ForEach>(&stmt.node)) {
            collect_ops_body(fe->body, out);
        } else if (const auto* acc = std::get_if<Accumulate>(&stmt.node)) {
            out.push_back(acc->op);
            collect_ops_expr(acc->value, out);
            if (acc->weights) collect_ops_expr(*acc->weights, out);
        } else {
            const auto& s = std::get<If>(stmt.node);
            collect_ops_body(s.then_body, out);
            collect_ops_body(s.else_body, out);
        }
    }
}

std::vector<std::string> collect_ops(const Ast& ast) {
    std::vector<std::string> out;
    collect_ops_body(ast.statements, out);
    return out;
}

}  // namespace

void recompute_levels(SchemaKnowledgeBase& kb) {
    std::map<std::string, int> state;  // 0 = visiting, 1 = done
    std::function<int(const std::string&)> level = [&](const std::string& op) -> int {
        if (kb.primitives.count(op)) return 0;
        auto it = kb.schemas.find(op);
        if (it == kb.schemas.end()) return 0;
        auto st = state.find(op);
        if (st != state.end()) return st->second == 1 ? it->second.level : 1;  // cycle guard
        state[op] = 0;
        int lv = 1;
        if (it->second.decomposition)
            for (const auto& used : collect_ops(*it->second.decomposition))
                lv = std::max(lv, 1 + level(used));
        it->second.level = lv;
        state[op] = 1;
        return lv;
    };
    for (auto& [name, schema] : kb.schemas) level(name);
}

namespace {

ValueType parse_type(const std::string& word, int line) {
    if (word == "scalar") return ValueType::Scalar;
    if (word == "vector") return ValueType::Vector;
    if (word == "collection") return ValueType::Collection;
    if (word == "table") return ValueType::Table;
    throw ParseError({line, 1}, "unknown result type '" + word + "'");
}

}  // namespace

int SchemaKnowledgeBase::level_of(const std::string& op) const {
    if (primitives.count(op)) return 0;
    auto it = schemas.find(op);
    return it == schemas.end() ? 0 : it->second.level;
}

SchemaKnowledgeBase parse_kb(const std::string& text, const std::string& origin) {
    SchemaKnowledgeBase kb;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    Schema* last = nullptr;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip(raw);
        if (line.empty() || line[0] == '#') continue;

        if (line.rfind("kb ", 0) == 0) {
            kb.name = strip(line.substr(3));
        } else if (line.rfind("primitive ", 0) == 0) {
            kb.primitives.insert(strip(line.substr(10)));
            last = nullptr;
        } else if (line.rfind("schema ", 0) == 0) {
            size_t open = line.find('(');
            size_t close = line.find(')');
            size_t arrow = line.find("->");
            if (open == std::string::npos || close == std::string::npos ||
                arrow == std::string::npos || close < open || arrow < close)
                throw ParseError({line_no, 1},
                                 "expected 'schema name(params) -> type'");
            Schema s;
            s.name = strip(line.substr(7, open - 7));
            std::string params = line.substr(open + 1, close - open - 1);
            std::istringstream ps(params);
            std::string p;
            while (std::getline(ps, p, ','))
                if (!strip(p).empty()) s.params.push_back(strip(p));
            s.result = parse_type(strip(line.substr(arrow + 2)), line_no);
            auto [it, fresh] = kb.schemas.emplace(s.name, std::move(s));
            if (!fresh)
                throw ParseError({line_no, 1},
                                 "schema '" + it->first + "' defined twice");
            last = &it->second;
        } else if (line == "decomposes {") {
            if (!last)
                throw ParseError({line_no, 1}, "'decomposes' without a schema");
            std::string body;
            int depth = 1;
            int start_line = line_no;
            while (depth > 0 && std::getline(in, raw)) {
                ++line_no;
                std::string inner = strip(raw);
                for (char c : inner) {
                    if (c == '{') ++depth;
                    if (c == '}') --depth;
                }
                if (depth == 0) {
                    if (inner != "}")
                        throw ParseError({line_no, 1},
                                         "closing '}' must stand alone");
                    break;
                }
                body += raw + "\n";
            }
            if (depth != 0)
                throw ParseError({start_line, 1}, "unterminated decomposition");
            SourceProgram src{"algorithm " + last->name + "\n" + body,
                              origin + " (schema " + last->name + ")"};
            last->decomposition = parse_program(src);
            last = nullptr;
        } else {
            throw ParseError({line_no, 1}, "unrecognized directive: " + line);
        }
    }
    recompute_levels(kb);
    return kb;
}

SchemaKnowledgeBase load_kb(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError({1, 1}, "cannot open knowledge base '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_kb(buf.str(), path);
}

DiagnosticList validate_kb(const SchemaKnowledgeBase& kb) {
    DiagnosticList diags;
    auto report = [&](const std::string& code, const std::string& msg) {
        diags.push_back({{1, 1}, code, msg});
    };

    if (kb.name.empty()) report("MissingName", "knowledge base has no 'kb' line");
    for (const auto& p : kb.primitives)
        if (!is_primitive_op(p))
            report("UnknownPrimitive", "'" + p + "' is not a primitive operation");
    for (const auto& [name, schema] : kb.schemas) {
        if (kb.primitives.count(name))
            report("DuplicateDeclaration",
                   "'" + name + "' is both a primitive and a schema");
        if (!schema.decomposition) continue;

        const Ast& decomp = *schema.decomposition;
        for (const auto& d : validate(decomp))
            diags.push_back({d.pos, d.code, "schema " + name + ": " + d.message});
        if (decomp.outputs.size() != 1)
            report("SignatureMismatch",
                   "schema " + name + ": decomposition must have exactly one output");

        std::vector<std::string> declared;
        for (const auto& d : decomp.declarations) declared.push_back(d.name);
        if (declared != schema.params)
            report("SignatureMismatch",
                   "schema " + name + ": parameter list does not match "
                   "decomposition inputs");

        bool self_or_unknown = false;
        for (const auto& used : collect_ops(decomp)) {
            if (used == name) {
                report("CyclicDefinition", "schema " + name + " decomposes via itself");
                self_or_unknown = true;
            } else if (!kb.knows(used)) {
                report("UnknownOperation",
                       "schema " + name + " uses '" + used +
                           "' which this knowledge base does not define");
                self_or_unknown = true;
            }
        }
        if (!self_or_unknown) {
            auto graph = flatten(build_cfg(decomp));
            if (graph.nodes.size() < 2)
                report("TrivialDecomposition",
                       "schema " + name + ": decomposition must contain at "
                       "least two operations");
        }
    }

    // Mutual recursion across schemas.
    std::map<std::string, int> mark;  // 1 visiting, 2 done
    std::function<bool(const std::string&)> cyclic = [&](const std::string& op) {
        auto it = kb.schemas.find(op);
        if (it == kb.schemas.end() || !it->second.decomposition) return false;
        if (mark[op] == 1) return true;
        if (mark[op] == 2) return false;
        mark[op] = 1;
        for (const auto& used : collect_ops(*it->second.decomposition))
            if (used != op && cyclic(used)) return true;
        mark[op] = 2;
        return false;
    };
    for (const auto& [name, schema] : kb.schemas)
        if (cyclic(name))
            report("CyclicDefinition",
                   "schema definitions form a cycle through '" + name + "'");

    return diags;
}

bool kb_subset(const SchemaKnowledgeBase& small, const SchemaKnowledgeBase& large) {
    for (const auto& p : small.primitives)
        if (!large.primitives.count(p)) return false;
    for (const auto& [name, schema] : small.schemas) {
        auto it = large.schemas.find(name);
        if (it == large.schemas.end()) return false;
        if (!schema.decomposition) continue;
        if (!it->second.decomposition) return false;
        if (!structurally_equal(*schema.decomposition, *it->second.decomposition))
            return false;
    }
    return true;
}

}  // namespace cogload
