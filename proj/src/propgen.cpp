#include "cogload/propgen.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "cogload/canonical.hpp"
#include "cogload/opgraph.hpp"
#include "cogload/parser.hpp"
#include "cogload/validate.hpp"

namespace cogload {

namespace {

class TextGen {
public:
    explicit TextGen(const ProgramGenConfig& cfg)
        : cfg_(cfg), rng_(cfg.seed ^ 0x9e3779b97f4a7c15ULL) {}

    std::string run() {
        std::ostringstream out;
        out << "algorithm generated_" << cfg_.seed << "\n";
        out << "input s0 : scalar\n";
        out << "input s1 : scalar\n";
        scalars_ = {"s0", "s1"};
        if (chance(40)) {
            out << "input s2 : scalar\n";
            scalars_.push_back("s2");
        }
        out << "input xs0 : vector size 8\n";
        vectors_ = {"xs0"};
        if (chance(50)) {
            out << "input xs1 : vector size 8\n";
            vectors_.push_back("xs1");
        }
        out << "input items0 : collection size 8\n";
        out << "input sub0 : collection subset of items0 size 4\n";
        iterables_ = {"items0", "sub0", "xs0"};
        out << "\n";

        int budget = 1 + pick(cfg_.max_statements);
        emit(out, 0, budget);
        // Final combining statement: guarantees a defined output and at
        // least one operation node in every generated program.
        std::string last = defined_.empty() ? "s1" : defined_.back();
        std::string name = "t" + std::to_string(fresh_++);
        out << name << " = " << last << " + s0\n";
        out << "\noutput " << name << "\n";
        return out.str();
    }

private:
    const ProgramGenConfig& cfg_;
    std::mt19937_64 rng_;
    std::vector<std::string> scalars_;    // readable scalar names
    std::vector<std::string> vectors_;    // indexable names
    std::vector<std::string> iterables_;  // loop targets
    std::vector<std::string> defined_;    // computed scalars (output pool)
    std::vector<std::string> loop_vars_;  // innermost last
    int fresh_ = 0;
    int loops_ = 0;

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
    bool chance(int percent) { return pick(100) < percent; }
    const std::string& one_of(const std::vector<std::string>& v) {
        return v[static_cast<size_t>(pick(static_cast<int>(v.size())))];
    }
    std::string indent(int depth) { return std::string(static_cast<size_t>(depth) * 2, ' '); }

    std::string leaf() {
        int r = pick(100);
        if (r < 40) return one_of(scalars_);
        if (r < 60) return std::to_string(1 + pick(9));
        const std::string& vec = one_of(vectors_);
        std::string idx =
            loop_vars_.empty() ? std::to_string(pick(8)) : loop_vars_.back();
        return vec + "[" + idx + "]";
    }

    std::string expr(int depth) {
        if (depth <= 0 || chance(30)) return leaf();
        if (chance(25)) {
            static const char* calls[] = {"sqrt", "square", "abs"};
            return std::string(calls[pick(3)]) + "(" + expr(depth - 1) + ")";
        }
        static const char* ops[] = {" + ", " - ", " * ", " / "};
        const char* op = ops[pick(4)];
        int n = 2 + (chance(30) ? 1 : 0);
        std::string out;
        for (int i = 0; i < n; ++i) {
            if (i) out += op;
            std::string part = expr(depth - 1);
            bool atomic = part.find(' ') == std::string::npos;
            out += atomic ? part : "(" + part + ")";
        }
        return out;
    }

    std::string comparison(const std::string& preferred_index) {
        std::string lhs;
        if (!preferred_index.empty() && chance(70)) {
            lhs = one_of(vectors_) + "[" + preferred_index + "]";
        } else {
            lhs = one_of(scalars_);
        }
        static const char* cmps[] = {">", "<", ">=", "<="};
        return lhs + " " + cmps[pick(4)] + " " + std::to_string(pick(20));
    }

    void emit_assign(std::ostringstream& out, int depth) {
        std::string name = "t" + std::to_string(fresh_++);
        if (!loop_vars_.empty() && chance(35)) {
            std::string vec = "w" + std::to_string(fresh_++);
            out << indent(depth) << vec << "[" << loop_vars_.back()
                << "] = " << expr(2) << "\n";
            vectors_.push_back(vec);
            return;
        }
        out << indent(depth) << name << " = " << expr(2) << "\n";
        scalars_.push_back(name);
        defined_.push_back(name);
    }

    void emit_accumulate(std::ostringstream& out, int depth) {
        std::string name = "t" + std::to_string(fresh_++);
        std::string lv = "i" + std::to_string(loops_++);
        static const char* ops[] = {"sum", "product", "average", "weighted_average"};
        const char* op = ops[pick(4)];
        out << indent(depth) << name << " = " << op << " over " << lv << " in "
            << one_of(iterables_);
        int filters = pick(cfg_.max_filters + 1);
        for (int i = 0; i < filters; ++i)
            out << (i ? " and " : " where ") << comparison(lv);
        loop_vars_.push_back(lv);
        out << " of " << expr(1 + pick(2));
        if (std::string(op) == "weighted_average") out << " weights " << expr(1);
        loop_vars_.pop_back();
        out << "\n";
        scalars_.push_back(name);
        defined_.push_back(name);
    }

    void emit_foreach(std::ostringstream& out, int depth) {
        std::string lv = "i" + std::to_string(loops_++);
        out << indent(depth) << "for each " << lv << " in " << one_of(iterables_);
        int filters = pick(cfg_.max_filters + 1);
        for (int i = 0; i < filters; ++i)
            out << (i ? " and " : " where ") << comparison(lv);
        out << " {\n";
        loop_vars_.push_back(lv);
        emit_assign(out, depth + 1);  // guarantee a nonempty body
        emit(out, depth + 1, pick(2));
        loop_vars_.pop_back();
        out << indent(depth) << "}\n";
    }

    void emit_if(std::ostringstream& out, int depth) {
        out << indent(depth) << "if " << comparison("");
        if (chance(30)) out << " and " << comparison("");
        out << " {\n";
        emit_assign(out, depth + 1);
        emit(out, depth + 1, pick(2));
        out << indent(depth) << "}";
        if (chance(40)) {
            out << " else {\n";
            emit_assign(out, depth + 1);
            out << indent(depth) << "}";
        }
        out << "\n";
    }

    void emit(std::ostringstream& out, int depth, int budget) {
        while (budget-- > 0) {
            int r = pick(100);
            if (depth < cfg_.max_depth && r < 20)
                emit_foreach(out, depth);
            else if (depth < cfg_.max_depth && r < 35)
                emit_if(out, depth);
            else if (r < 65)
                emit_accumulate(out, depth);
            else
                emit_assign(out, depth);
        }
    }
};

// --- KB extension sampling ----------------------------------------------

int op_count(const Expr& e) {
    int n = 0;
    if (const auto* call = std::get_if<Call>(&e.node)) {
        n = 1;
        for (const auto& a : call->args) n += op_count(a);
    } else if (const auto* chain = std::get_if<NaryOp>(&e.node)) {
        n = 1;
        for (const auto& operand : chain->operands) n += op_count(operand);
    }
    return n;
}

bool only_plain_input_reads(const Expr& e, const std::set<std::string>& inputs) {
    if (std::holds_alternative<Literal>(e.node)) return true;
    if (const auto* ref = std::get_if<VarRef>(&e.node))
        return ref->indices.empty() && inputs.count(ref->name) > 0;
    if (const auto* call = std::get_if<Call>(&e.node)) {
        if (!is_primitive_op(call->callee)) return false;
        for (const auto& a : call->args)
            if (!only_plain_input_reads(a, inputs)) return false;
        return true;
    }
    const auto& chain = std::get<NaryOp>(e.node);
    for (const auto& operand : chain.operands)
        if (!only_plain_input_reads(operand, inputs)) return false;
    return true;
}

void collect_candidates(const Expr& e, const std::set<std::string>& inputs,
                        std::vector<const Expr*>& out) {
    int n = op_count(e);
    if (n >= 2 && n <= 4 && only_plain_input_reads(e, inputs)) out.push_back(&e);
    if (const auto* call = std::get_if<Call>(&e.node)) {
        for (const auto& a : call->args) collect_candidates(a, inputs, out);
    } else if (const auto* chain = std::get_if<NaryOp>(&e.node)) {
        for (const auto& operand : chain->operands)
            collect_candidates(operand, inputs, out);
    }
}

void collect_candidates(const std::vector<Stmt>& stmts,
                        const std::set<std::string>& inputs,
                        std::vector<const Expr*>& out) {
    for (const auto& stmt : stmts) {
        if (const auto* a = std::get_if<Assign>(&stmt.node))
            collect_candidates(a->value, inputs, out);
        else if (const auto* fe = std::get_if<ForEach>(&stmt.node))
            collect_candidates(fe->body, inputs, out);
        else if (const auto* acc = std::get_if<Accumulate>(&stmt.node))
            collect_candidates(acc->value, inputs, out);
        else {
            const auto& s = std::get<If>(stmt.node);
            collect_candidates(s.then_body, inputs, out);
            collect_candidates(s.else_body, inputs, out);
        }
    }
}

void rename_vars(Expr& e, std::map<std::string, std::string>& names, int& next) {
    if (auto* ref = std::get_if<VarRef>(&e.node)) {
        auto [it, fresh] = names.emplace(ref->name, "p" + std::to_string(next));
        if (fresh) ++next;
        ref->name = it->second;
        return;
    }
    if (auto* call = std::get_if<Call>(&e.node)) {
        for (auto& a : call->args) rename_vars(a, names, next);
    } else if (auto* chain = std::get_if<NaryOp>(&e.node)) {
        for (auto& operand : chain->operands) rename_vars(operand, names, next);
    }
}

std::string pattern_key(const Ast& decomposition) {
    return canonical_serialize(flatten(build_cfg(decomposition)));
}

Ast make_decomposition(const std::string& name, const Expr& fragment) {
    Expr renamed = fragment;
    std::map<std::string, std::string> names;
    int next = 0;
    rename_vars(renamed, names, next);

    std::ostringstream src;
    src << "algorithm " << name << "\n";
    for (int i = 0; i < next; ++i) src << "input p" << i << " : scalar\n";
    src << "r = " << pretty_print(renamed) << "\n";
    src << "output r\n";
    return parse_program({src.str(), "generated schema " + name});
}

}  // namespace

Ast gen_program(const ProgramGenConfig& config) {
    TextGen gen(config);
    std::string text = gen.run();
    return parse_program({text, "generated (seed " + std::to_string(config.seed) + ")"});
}

SchemaKnowledgeBase gen_kb_extension(const SchemaKnowledgeBase& kb, std::uint64_t seed,
                                     const Ast& program) {
    std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbULL);
    SchemaKnowledgeBase out = kb;

    std::set<std::string> inputs;
    for (const auto& d : program.declarations)
        if (d.type == ValueType::Scalar) inputs.insert(d.name);

    std::vector<const Expr*> candidates;
    collect_candidates(program.statements, inputs, candidates);
    std::shuffle(candidates.begin(), candidates.end(), rng);

    std::set<std::string> seen;
    for (const auto& [name, schema] : kb.schemas)
        if (schema.decomposition) seen.insert(pattern_key(*schema.decomposition));

    int want = 1 + std::uniform_int_distribution<int>(0, 2)(rng);
    int added = 0;
    int serial = 0;
    auto next_name = [&] {
        std::string name;
        do {
            name = "macro_" + std::to_string(seed % 1000) + "_" + std::to_string(serial++);
        } while (out.knows(name));
        return name;
    };
    auto try_add = [&](const Ast& decomposition, const std::string& name) {
        std::string key = pattern_key(decomposition);
        if (!seen.insert(key).second) return false;
        Schema s;
        s.name = name;
        for (const auto& d : decomposition.declarations) s.params.push_back(d.name);
        s.result = ValueType::Scalar;
        s.decomposition = decomposition;
        out.schemas.emplace(name, std::move(s));
        ++added;
        return true;
    };

    for (const Expr* fragment : candidates) {
        if (added >= want) break;
        std::string name = next_name();
        try_add(make_decomposition(name, *fragment), name);
    }
    if (added == 0) {
        // Program offered no liftable fragment; fall back to canned shapes.
        for (const char* text : {"square(p0) + square(p1)", "(p0 + p1) * p0"}) {
            std::string name = next_name();
            std::ostringstream src;
            src << "algorithm " << name << "\ninput p0 : scalar\ninput p1 : scalar\n"
                << "r = " << text << "\noutput r\n";
            if (try_add(parse_program({src.str(), "generated schema " + name}), name))
                break;
        }
    }
    recompute_levels(out);
    return out;
}

}  // namespace cogload
