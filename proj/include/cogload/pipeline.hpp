#pragma once

#include "cogload/abstraction.hpp"
#include "cogload/canonical.hpp"
#include "cogload/cfg.hpp"
#include "cogload/parser.hpp"
#include "cogload/schema_kb.hpp"
#include "cogload/scoring.hpp"
#include "cogload/validate.hpp"

namespace cogload {

// Raised when a program parses but fails semantic checks; carries the full
// diagnostic list so callers can print everything at once.
struct ValidationError : std::runtime_error {
    DiagnosticList diags;
    explicit ValidationError(DiagnosticList d)
        : std::runtime_error("program failed validation"), diags(std::move(d)) {}
};

struct PipelineResult {
    Ast program;
    ControlFlowGraph cfg;
    OperationGraph odg;         // dependence graph before abstraction
    OperationContextGraph ocg;  // after abstraction against the KB
    std::vector<AbstractionStep> trace;
    EPolynomial score;
};

// parse -> validate -> CFG (+ structure check) -> flatten -> contexts ->
// abstract to fixpoint -> score. max_steps limits rewrites for inspection.
PipelineResult run_pipeline(const SourceProgram& source, const SchemaKnowledgeBase& kb,
                            int max_steps = -1);

}  // namespace cogload
