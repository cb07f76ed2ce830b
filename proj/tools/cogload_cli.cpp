#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cogload/pipeline.hpp"
#include "cogload/propgen.hpp"
#include "cogload/report.hpp"

#ifndef _WIN32
#include <unistd.h>
#endif

namespace {

using namespace cogload;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SourceProgram read_source(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return {buf.str(), path};
}

void write_out(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write '" + out_path + "'");
    out << text;
}

bool want_color() {
#ifndef _WIN32
    if (!isatty(fileno(stdout))) return false;
#endif
    return std::getenv("COGLOAD_NO_COLOR") == nullptr;
}

int print_diagnostics(const std::string& origin, const DiagnosticList& diags) {
    for (const auto& d : diags)
        std::cerr << format_diagnostic(d, origin) << "\n";
    return 1;
}

int cmd_score(const std::string& file, const std::string& kb_path,
              const std::string& format, Growth growth, int stage,
              const std::string& out_path) {
    auto kb = load_kb(kb_path);
    auto result = run_pipeline(read_source(file), kb, stage);
    if (format == "json") {
        write_out(out_path, score_report(result, growth).dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << result.ocg.algorithm << " under " << kb.name << ":\n"
            << "  score   " << result.score.format() << "\n"
            << "  numeric " << std::fixed << std::setprecision(2)
            << evaluate(result.score, growth) << " (" << to_string(growth) << ")\n"
            << "  nodes   " << result.ocg.nodes.size() << " (from "
            << result.odg.nodes.size() << " before abstraction, "
            << result.trace.size() << " rewrites)\n";
        write_out(out_path, out.str());
    }
    return 0;
}

int cmd_graph(const std::string& file, const std::string& kb_path,
              const std::string& kind, int stage, const std::string& out_path) {
    auto kb = load_kb(kb_path);
    auto result = run_pipeline(read_source(file), kb, stage);
    if (kind == "cfg")
        write_out(out_path, to_dot(result.cfg));
    else if (kind == "odg")
        write_out(out_path, to_dot(result.odg));
    else
        write_out(out_path, to_dot(result.ocg));
    return 0;
}

int cmd_compare(const std::string& file, const std::vector<std::string>& kb_paths,
                Growth growth, const std::string& out_path) {
    auto source = read_source(file);
    std::vector<CompareRow> rows;
    std::string algorithm;
    for (const auto& path : kb_paths) {
        auto kb = load_kb(path);
        auto result = run_pipeline(source, kb);
        algorithm = result.ocg.algorithm;
        rows.push_back({kb.name, static_cast<int>(result.ocg.nodes.size()),
                        result.score});
    }
    write_out(out_path,
              compare_table(algorithm, rows, growth, out_path.empty() && want_color()));
    return 0;
}

int cmd_validate_kb(const std::string& kb_path) {
    auto kb = load_kb(kb_path);
    auto diags = validate_kb(kb);
    if (!diags.empty()) return print_diagnostics(kb_path, diags);
    std::cout << kb.name << ": ok (" << kb.primitives.size() << " primitives, "
              << kb.schemas.size() << " schemas)\n";
    return 0;
}

int cmd_check(const std::vector<std::string>& kb_paths, std::uint64_t seed,
              int iterations) {
    std::vector<SchemaKnowledgeBase> kbs;
    for (const auto& path : kb_paths) kbs.push_back(load_kb(path));

    int monotonic_violations = 0;
    for (int i = 0; i < iterations; ++i) {
        ProgramGenConfig cfg;
        cfg.seed = seed + static_cast<std::uint64_t>(i);
        Ast program = gen_program(cfg);
        if (auto diags = validate(program); !diags.empty())
            return print_diagnostics("generated seed " + std::to_string(cfg.seed), diags);
        SourceProgram src{pretty_print(program), "generated"};
        for (const auto& kb : kbs) {
            auto result = run_pipeline(src, kb);
            auto extended = gen_kb_extension(kb, cfg.seed, program);
            auto widened = run_pipeline(src, extended);
            if (evaluate(widened.score, Growth::Exponential) >
                evaluate(result.score, Growth::Exponential) + 1e-9) {
                ++monotonic_violations;
                std::cerr << "monotonicity violated: seed " << cfg.seed << " kb "
                          << kb.name << ": " << result.score.format() << " -> "
                          << widened.score.format() << "\n";
            }
        }
    }
    std::cout << iterations << " generated programs checked against "
              << kbs.size() << " knowledge base(s); " << monotonic_violations
              << " monotonicity violation(s)\n";
    return monotonic_violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cognitive-complexity scoring for structured algorithms"};
    app.require_subcommand(1);

    std::string file, kb_path, out_path;
    std::vector<std::string> kb_paths;
    std::string format = "text";
    std::string kind = "ocg";
    std::string growth_name = "exponential";
    int stage = -1;
    std::uint64_t seed = 1;
    int iterations = 50;

    auto* score = app.add_subcommand("score", "score one program");
    score->add_option("file", file, "program (.alg)")->required();
    score->add_option("--kb", kb_path, "knowledge base (.kb)")->required();
    score->add_option("--format", format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    score->add_option("--growth", growth_name, "exponential|linear|quadratic");
    score->add_option("--stage", stage, "stop after N rewrites");
    score->add_option("--out", out_path, "write to file instead of stdout");

    auto* graph = app.add_subcommand("graph", "emit graphviz for a pipeline stage");
    graph->add_option("file", file, "program (.alg)")->required();
    graph->add_option("--kb", kb_path, "knowledge base (.kb)")->required();
    graph->add_option("--kind", kind, "cfg|odg|ocg")
        ->check(CLI::IsMember({"cfg", "odg", "ocg"}));
    graph->add_option("--stage", stage, "stop after N rewrites");
    graph->add_option("--out", out_path, "write to file instead of stdout");

    auto* compare = app.add_subcommand("compare", "score under several KBs");
    compare->add_option("file", file, "program (.alg)")->required();
    compare->add_option("--kb", kb_paths, "knowledge bases (repeatable)")
        ->required()
        ->expected(-1);
    compare->add_option("--growth", growth_name, "exponential|linear|quadratic");
    compare->add_option("--out", out_path, "write to file instead of stdout");

    auto* check = app.add_subcommand("check", "run generated property sweeps");
    check->add_option("--kb", kb_paths, "knowledge bases (repeatable)")
        ->required()
        ->expected(-1);
    check->add_option("--seed", seed, "base seed");
    check->add_option("--iterations", iterations, "programs to generate");

    auto* vkb = app.add_subcommand("validate-kb", "check a knowledge base file");
    vkb->add_option("file", kb_path, "knowledge base (.kb)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Growth growth = parse_growth(growth_name);
        if (score->parsed())
            return cmd_score(file, kb_path, format, growth, stage, out_path);
        if (graph->parsed()) return cmd_graph(file, kb_path, kind, stage, out_path);
        if (compare->parsed()) return cmd_compare(file, kb_paths, growth, out_path);
        if (check->parsed()) return cmd_check(kb_paths, seed, iterations);
        if (vkb->parsed()) return cmd_validate_kb(kb_path);
    } catch (const cogload::ValidationError& e) {
        return print_diagnostics(file, e.diags);
    } catch (const cogload::LexError& e) {
        std::cerr << file << ":" << e.pos().line << ":" << e.pos().column << ": "
                  << e.what() << "\n";
        return 1;
    } catch (const cogload::ParseError& e) {
        std::cerr << file << ":" << e.pos().line << ":" << e.pos().column << ": "
                  << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
