#include "doctest.h"

#include "cogload/schema_kb.hpp"
#include "helpers.hpp"

using namespace cogload;

namespace {

bool has_code(const DiagnosticList& diags, const std::string& code) {
    for (const auto& d : diags)
        if (d.code == code) return true;
    return false;
}

}  // namespace

TEST_CASE("kb: shipped knowledge bases load and validate") {
    auto low = load_kb(test_helpers::data_path("low_literacy.kb"));
    CHECK(low.name == "low_literacy");
    CHECK(low.primitives.size() == 8);
    CHECK(low.schemas.size() == 7);
    CHECK(validate_kb(low).empty());

    auto high = load_kb(test_helpers::data_path("high_literacy.kb"));
    CHECK(high.name == "high_literacy");
    CHECK(high.schemas.size() == 10);
    CHECK(validate_kb(high).empty());
    CHECK(high.schemas.at("dot_product").decomposition.has_value());
    CHECK_FALSE(high.schemas.at("vector_subtract").decomposition.has_value());
}

TEST_CASE("kb: levels sit one above the operations used") {
    auto high = load_kb(test_helpers::data_path("high_literacy.kb"));
    CHECK(high.level_of("add") == 0);
    CHECK(high.level_of("sum") == 1);
    CHECK(high.level_of("sort") == 1);
    CHECK(high.level_of("dot_product") == 2);  // built from sum (1) and mul (0)
    CHECK(high.level_of("l2_norm") == 2);
    CHECK(high.level_of("unknown_op") == 0);
}

TEST_CASE("kb: subset relation") {
    auto low = load_kb(test_helpers::data_path("low_literacy.kb"));
    auto high = load_kb(test_helpers::data_path("high_literacy.kb"));
    CHECK(kb_subset(low, high));
    CHECK_FALSE(kb_subset(high, low));
    CHECK(kb_subset(low, low));
}

TEST_CASE("kb: malformed files raise parse errors") {
    CHECK_THROWS_AS(parse_kb("kb x\nbogus line\n", "<test>"), ParseError);
    CHECK_THROWS_AS(parse_kb("kb x\nschema f() ->\n", "<test>"), ParseError);
    CHECK_THROWS_AS(parse_kb("kb x\nschema f(a) -> scalar\n"
                             "decomposes {\ninput a : scalar\nr = a + a\n",
                             "<test>"),
                    ParseError);  // unterminated block
    CHECK_THROWS_AS(parse_kb("kb x\ndecomposes {\n}\n", "<test>"), ParseError);
    CHECK_THROWS_AS(parse_kb("kb x\nschema f(a) -> scalar\nschema f(a) -> scalar\n",
                             "<test>"),
                    ParseError);  // duplicate schema
    CHECK_THROWS_AS(load_kb("/nonexistent/path.kb"), ParseError);
}

TEST_CASE("kb: semantic validation catches bad definitions") {
    auto unknown_prim = parse_kb("kb x\nprimitive frobnicate\n", "<test>");
    CHECK(has_code(validate_kb(unknown_prim), "UnknownPrimitive"));

    auto unknown_op = parse_kb(
        "kb x\nprimitive mul\nschema f(a) -> scalar\ndecomposes {\n"
        "input a : scalar\nr = mystery(a) * a\noutput r\n}\n",
        "<test>");
    CHECK(has_code(validate_kb(unknown_op), "UnknownOperation"));

    auto two_ops = parse_kb(
        "kb x\nprimitive add\nprimitive sqrt\nschema f(a) -> scalar\n"
        "decomposes {\ninput a : scalar\nr = sqrt(a) + a\noutput r\n}\n",
        "<test>");
    CHECK_FALSE(has_code(validate_kb(two_ops), "TrivialDecomposition"));
    auto too_small = parse_kb(
        "kb x\nprimitive sqrt\nschema f(a) -> scalar\ndecomposes {\n"
        "input a : scalar\nr = sqrt(a)\noutput r\n}\n",
        "<test>");
    CHECK(has_code(validate_kb(too_small), "TrivialDecomposition"));

    auto bad_params = parse_kb(
        "kb x\nprimitive add\nprimitive mul\nschema f(a, b) -> scalar\n"
        "decomposes {\ninput b : scalar\ninput a : scalar\n"
        "r = (a + b) * a\noutput r\n}\n",
        "<test>");
    CHECK(has_code(validate_kb(bad_params), "SignatureMismatch"));

    auto cyclic = parse_kb(
        "kb x\nprimitive add\n"
        "schema f(a) -> scalar\ndecomposes {\ninput a : scalar\n"
        "r = g(a) + a\noutput r\n}\n"
        "schema g(a) -> scalar\ndecomposes {\ninput a : scalar\n"
        "r = f(a) + a\noutput r\n}\n",
        "<test>");
    CHECK(has_code(validate_kb(cyclic), "CyclicDefinition"));
}

TEST_CASE("kb: recompute_levels follows edits") {
    auto kb = parse_kb("kb x\nprimitive add\nschema s(a) -> scalar\n", "<test>");
    CHECK(kb.level_of("s") == 1);
    Schema deep;
    deep.name = "d";
    deep.params = {"a"};
    deep.decomposition = parse_program(
        {"algorithm d\ninput a : scalar\nr = s(a) + a\noutput r\n", "<test>"});
    kb.schemas.emplace("d", deep);
    recompute_levels(kb);
    CHECK(kb.level_of("d") == 2);
}
