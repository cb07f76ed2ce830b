#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cogload/pipeline.hpp"

namespace cogload {

// Graphviz renderings. The operation graph groups nodes into nested context
// clusters when the labels nest cleanly; otherwise contexts stay in the node
// labels and the clusters are skipped.
std::string to_dot(const ControlFlowGraph& cfg);
std::string to_dot(const OperationContextGraph& graph);

// Machine-readable scoring report ("reportVersion": 1); nodes listed in
// canonical order so equal graphs serialize identically.
nlohmann::ordered_json score_report(const PipelineResult& result, Growth growth);

// One row per knowledge base, lowest numeric score marked. Color via ANSI
// escapes unless disabled or COGLOAD_NO_COLOR is set.
struct CompareRow {
    std::string kb;
    int nodes = 0;
    EPolynomial score;
};
std::string compare_table(const std::string& algorithm,
                          const std::vector<CompareRow>& rows, Growth growth,
                          bool color);

}  // namespace cogload
