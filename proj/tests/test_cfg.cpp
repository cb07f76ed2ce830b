#include "doctest.h"

#include <algorithm>

#include "cogload/cfg.hpp"
#include "cogload/parser.hpp"
#include "helpers.hpp"

using namespace cogload;
using test_helpers::inline_program;

namespace {

ControlFlowGraph cfg_of(const std::string& text) {
    return build_cfg(parse_program(inline_program(text)));
}

int count_kind(const ControlFlowGraph& g, CfgKind k) {
    return static_cast<int>(std::count_if(g.nodes.begin(), g.nodes.end(),
                                          [&](const CfgNode& n) { return n.kind == k; }));
}

bool has_back_edge(const ControlFlowGraph& g) {
    return std::any_of(g.edges.begin(), g.edges.end(),
                       [](const CfgEdge& e) { return e.back; });
}

}  // namespace

TEST_CASE("cfg: consecutive assignments share one basic block") {
    auto g = cfg_of("algorithm t\ninput a : scalar\n"
                    "x = a + 1\ny = x * 2\nz = y - a\noutput z\n");
    CHECK(count_kind(g, CfgKind::Block) == 1);
    const auto* block = &g.nodes[1];
    REQUIRE(block->kind == CfgKind::Block);
    CHECK(block->labels.size() == 3);
    CHECK(verify_structured(g));
}

TEST_CASE("cfg: accumulation lowers to init, header, body, back edge") {
    auto g = cfg_of("algorithm t\ninput xs : vector\ninput c : collection\n"
                    "s = sum over i in c of xs[i]\noutput s\n");
    CHECK(count_kind(g, CfgKind::Iteration) == 1);
    CHECK(count_kind(g, CfgKind::Block) == 2);  // init + body
    CHECK(has_back_edge(g));
    CHECK(verify_structured(g));
}

TEST_CASE("cfg: filter conjuncts become nested selections that skip back") {
    auto g = cfg_of("algorithm t\ninput xs : vector\ninput c : collection\n"
                    "s = sum over i in c where xs[i] > 1 and xs[i] < 9 of xs[i]\n"
                    "output s\n");
    CHECK(count_kind(g, CfgKind::Selection) == 2);
    int back_edges = static_cast<int>(
        std::count_if(g.edges.begin(), g.edges.end(),
                      [](const CfgEdge& e) { return e.back; }));
    CHECK(back_edges == 3);  // one per failed conjunct plus the body's
    CHECK(verify_structured(g));
}

TEST_CASE("cfg: if without else reduces as a triangle") {
    auto g = cfg_of("algorithm t\ninput a : scalar\n"
                    "x = a + 1\nif a > 2 { y = x * 2 }\noutput x\n");
    CHECK(count_kind(g, CfgKind::Selection) == 1);
    CHECK(verify_structured(g));
}

TEST_CASE("cfg: if/else reduces as a diamond") {
    auto g = cfg_of("algorithm t\ninput a : scalar\n"
                    "if a > 2 { y = a * 2 } else { z = a + 2 }\noutput a\n");
    CHECK(count_kind(g, CfgKind::Selection) == 1);
    CHECK(verify_structured(g));
    const CfgNode* sel = nullptr;
    for (const auto& n : g.nodes)
        if (n.kind == CfgKind::Selection) sel = &n;
    REQUIRE(sel != nullptr);
    CHECK(sel->guard == "a > 2");
}

TEST_CASE("cfg: nested loops in the corpus stay structured") {
    for (const auto& file : test_helpers::corpus_files()) {
        CAPTURE(file);
        auto g = build_cfg(parse_program(test_helpers::read_program(file)));
        CHECK(verify_structured(g));
    }
}

TEST_CASE("cfg: a cross edge is rejected as unstructured") {
    // Two selections whose branches cross; irreducible by region folding.
    ControlFlowGraph g;
    for (int i = 0; i < 6; ++i) {
        CfgNode n;
        n.id = i;
        n.kind = CfgKind::Block;
        g.nodes.push_back(n);
    }
    g.nodes[0].kind = CfgKind::Start;
    g.nodes[5].kind = CfgKind::End;
    g.nodes[1].kind = CfgKind::Selection;
    g.nodes[2].kind = CfgKind::Selection;
    g.start_id = 0;
    g.end_id = 5;
    auto edge = [&](int a, int b) { g.edges.push_back({a, b, "", false}); };
    edge(0, 1);
    edge(1, 2);
    edge(1, 3);
    edge(2, 3);
    edge(2, 4);
    edge(3, 5);
    edge(4, 3);  // cross edge into the other branch
    edge(4, 5);
    DiagnosticList diags;
    CHECK_FALSE(verify_structured(g, &diags));
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "Unstructured");
}

TEST_CASE("cfg: guard text joins conjuncts on if statements") {
    auto g = cfg_of("algorithm t\ninput a : scalar\n"
                    "if a > 1 and a < 9 { x = a * 2 }\noutput a\n");
    const CfgNode* sel = nullptr;
    for (const auto& n : g.nodes)
        if (n.kind == CfgKind::Selection) sel = &n;
    REQUIRE(sel != nullptr);
    CHECK(sel->guard == "a > 1 and a < 9");
}
