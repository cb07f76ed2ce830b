#include "doctest.h"

#include <cmath>

#include "cogload/parser.hpp"
#include "cogload/pipeline.hpp"
#include "helpers.hpp"

using namespace cogload;

TEST_CASE("epolynomial: terms merge and cancel") {
    EPolynomial p;
    p.add_term(3);
    p.add_term(3, 2);
    p.add_term(1);
    CHECK(p.format() == "3e^3 + e");
    p.add_term(3, -3);
    CHECK(p.format() == "e");
    p.add_term(1, -1);
    CHECK(p.empty());
    CHECK(p.format() == "0");
}

TEST_CASE("epolynomial: formatting conventions") {
    EPolynomial p;
    p.add_term(4, 2);
    p.add_term(3, 11);
    p.add_term(2, 4);
    CHECK(p.format() == "2e^4 + 11e^3 + 4e^2");
    EPolynomial q;
    q.add_term(0, 5);
    q.add_term(1);
    CHECK(q.format() == "e + 5");
}

TEST_CASE("epolynomial: parse inverts format") {
    for (const char* text : {"2e^4 + 11e^3 + 4e^2", "2e^4 + 3e^3 + e", "e", "0",
                             "7", "e^2 + 1", "e^4 + e^3"}) {
        CAPTURE(text);
        CHECK(EPolynomial::parse(text).format() == text);
    }
    CHECK(EPolynomial::parse("0").empty());
    CHECK_THROWS_AS(EPolynomial::parse("2f^3"), ParseError);
    CHECK_THROWS_AS(EPolynomial::parse("e^"), ParseError);
    CHECK_THROWS_AS(EPolynomial::parse("e +"), ParseError);
    CHECK_THROWS_AS(EPolynomial::parse("1 2"), ParseError);
}

TEST_CASE("evaluate: growth models") {
    auto p = EPolynomial::parse("2e^4 + 3e^3 + e");
    CHECK(evaluate(p, Growth::Exponential) ==
          doctest::Approx(2 * std::exp(4.0) + 3 * std::exp(3.0) + std::exp(1.0)));
    CHECK(evaluate(p, Growth::Linear) == doctest::Approx(2 * 4 + 3 * 3 + 1));
    CHECK(evaluate(p, Growth::Quadratic) == doctest::Approx(2 * 16 + 3 * 9 + 1));
    EPolynomial huge;
    huge.add_term(1000);
    CHECK_THROWS_AS(evaluate(huge, Growth::Exponential), InternalError);
    CHECK(evaluate(huge, Growth::Linear) == doctest::Approx(1000.0));
}

TEST_CASE("growth names round trip") {
    for (auto g : {Growth::Exponential, Growth::Linear, Growth::Quadratic})
        CHECK(parse_growth(to_string(g)) == g);
    CHECK(parse_growth("exp") == Growth::Exponential);
    CHECK_THROWS_AS(parse_growth("cubic"), ParseError);
}

TEST_CASE("cognitive load adds contexts, parents, and one") {
    OperationNode n;
    n.id = 7;
    n.op = "mul";
    CHECK(cognitive_load(n) == 1);
    n.contexts = {"subset:a", "pred:x > 1"};
    n.inputs = {{true, -1, "xs"}, {false, 3, ""}, {false, 4, ""}, {false, 3, ""}};
    CHECK(context_count(n) == 2);
    CHECK(parent_count(n) == 2);  // node 3 counted once, source ignored
    CHECK(cognitive_load(n) == 5);
}

TEST_CASE("cognitive complexity sums e^load over the graph") {
    auto kb = load_kb(test_helpers::data_path("low_literacy.kb"));
    auto result = run_pipeline(test_helpers::read_program("corpus/uib.alg"), kb);
    CHECK(result.score.format() == "2e^4 + 3e^3 + e");
    long long nodes = 0;
    for (const auto& [exp, count] : result.score.terms()) nodes += count;
    CHECK(nodes == 6);
}
