#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "rolepred/backend.hpp"
#include "rolepred/config.hpp"
#include "rolepred/corpus.hpp"
#include "rolepred/extraction.hpp"
#include "rolepred/selection.hpp"

namespace rolepred {

/// The pipeline output: ranked role clusters plus one event instance per
/// document, keyed by cluster representative.
struct PipelineResult {
    std::string event_type;
    std::vector<RoleCluster> clusters;
    std::vector<EventInstance> instances;

    bool operator==(const PipelineResult&) const = default;
};

std::string result_to_json_text(const PipelineResult& result);
PipelineResult result_from_json_text(std::string_view json_text);
PipelineResult load_result(const std::filesystem::path& path);
void save_result(const PipelineResult& result, const std::filesystem::path& path);

struct Backends {
    std::unique_ptr<InfillBackend> infill;
    std::unique_ptr<QaBackend> qa;
    std::unique_ptr<EmbedBackend> embed;
};

/// Instantiates mock or HTTP backends per the config. Mock backends need
/// the corpus to validate their fixtures.
Backends make_backends(const PipelineConfig& config, const Corpus& corpus);

/// annotate -> prompts -> generation -> extraction over all candidates ->
/// coverage filter -> merge -> instances reassembled for the surviving
/// clusters. Deterministic given deterministic backends.
PipelineResult run_pipeline(const Corpus& corpus, const PipelineConfig& config,
                            InfillBackend& infill, QaBackend& qa);

/// File-level wrapper: loads the corpus, builds backends, writes the
/// result file. No partial output is left behind on error.
PipelineResult run_pipeline(const std::filesystem::path& corpus_path,
                            const PipelineConfig& config, const std::filesystem::path& out_path);

/// Re-extracts instances for an existing cluster set (the extract-events
/// command).
PipelineResult extract_events(const Corpus& corpus, std::vector<RoleCluster> clusters,
                              const PipelineConfig& config, QaBackend& qa);

}  // namespace rolepred
