#include "cogload/pipeline.hpp"

namespace cogload {

PipelineResult run_pipeline(const SourceProgram& source, const SchemaKnowledgeBase& kb,
                            int max_steps) {
    PipelineResult r;
    r.program = parse_program(source);
    if (auto diags = validate(r.program); !diags.empty())
        throw ValidationError(std::move(diags));
    r.cfg = build_cfg(r.program);
    DiagnosticList structure;
    if (!verify_structured(r.cfg, &structure)) throw ValidationError(std::move(structure));
    r.odg = flatten(r.cfg);
    assign_contexts(r.odg, r.program);
    r.ocg = abstract_to_fixpoint(r.odg, kb, &r.trace, max_steps);
    r.score = cognitive_complexity(r.ocg);
    return r;
}

}  // namespace cogload
