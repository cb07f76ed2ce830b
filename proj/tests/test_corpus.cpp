#include "doctest.h"

#include <cmath>
#include <fstream>

#include "json.hpp"

#include "cogload/pipeline.hpp"
#include "helpers.hpp"

using namespace cogload;

namespace {

nlohmann::json load_golden(const std::string& name) {
    std::ifstream in(test_helpers::data_path("corpus/golden/" + name));
    REQUIRE_MESSAGE(in.good(), ("missing golden file " + name));
    return nlohmann::json::parse(in);
}

const std::vector<std::string>& golden_files() {
    static const std::vector<std::string> files = {
        "revenue_task1.json", "revenue_task2.json", "revenue_task3.json",
        "uib.json", "uuknn.json"};
    return files;
}

}  // namespace

TEST_CASE("corpus: every golden entry replays exactly") {
    auto low = load_kb(test_helpers::data_path("low_literacy.kb"));
    auto high = load_kb(test_helpers::data_path("high_literacy.kb"));

    for (const auto& name : golden_files()) {
        CAPTURE(name);
        auto golden = load_golden(name);
        auto source =
            test_helpers::read_program("corpus/" + golden["file"].get<std::string>());
        for (const auto* kb : {&low, &high}) {
            CAPTURE(kb->name);
            auto expected = golden["scores"][kb->name];
            auto result = run_pipeline(source, *kb);
            CHECK(result.ocg.algorithm == golden["algorithm"].get<std::string>());
            CHECK(result.score.format() == expected["symbolic"].get<std::string>());
            CHECK(result.ocg.nodes.size() == expected["nodes"].get<size_t>());
            double numeric = evaluate(result.score, Growth::Exponential);
            CHECK(std::abs(numeric - expected["numeric"].get<double>()) < 0.005);
        }
    }
}

TEST_CASE("corpus: uib is knowledge-base independent") {
    auto low = load_kb(test_helpers::data_path("low_literacy.kb"));
    auto high = load_kb(test_helpers::data_path("high_literacy.kb"));
    auto source = test_helpers::read_program("corpus/uib.alg");
    auto a = run_pipeline(source, low);
    auto b = run_pipeline(source, high);
    CHECK(a.score == b.score);
    CHECK(isomorphic(a.ocg, b.ocg));
}

TEST_CASE("corpus: load multisets match the golden coefficients") {
    auto low = load_kb(test_helpers::data_path("low_literacy.kb"));
    auto high = load_kb(test_helpers::data_path("high_literacy.kb"));

    auto multiset_of = [](const PipelineResult& r) {
        std::multiset<int> out;
        for (const auto& n : r.ocg.nodes) out.insert(cognitive_load(n));
        return out;
    };

    auto uib = run_pipeline(test_helpers::read_program("corpus/uib.alg"), low);
    CHECK(multiset_of(uib) == std::multiset<int>{1, 3, 3, 3, 4, 4});

    auto knn_low = run_pipeline(test_helpers::read_program("corpus/uuknn.alg"), low);
    CHECK(knn_low.ocg.nodes.size() == 17);
    auto knn_high = run_pipeline(test_helpers::read_program("corpus/uuknn.alg"), high);
    CHECK(knn_high.ocg.nodes.size() == 12);
    CHECK(multiset_of(knn_high) ==
          std::multiset<int>{2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 4, 4});
}
