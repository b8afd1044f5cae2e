#pragma once

#include <filesystem>
#include <string>

#include "rolepred/evaluation.hpp"
#include "rolepred/extraction.hpp"
#include "rolepred/generation.hpp"
#include "rolepred/ner.hpp"
#include "rolepred/selection.hpp"

namespace rolepred {

enum class BackendKind { mock, http };

struct BackendConfig {
    BackendKind kind = BackendKind::mock;
    std::string base_url;
    std::string fixture_path;
    int embed_dimensions = 256;
};

enum class AnnotatorKind { fallback, sidecar };

struct NerConfig {
    AnnotatorKind annotator = AnnotatorKind::fallback;
    std::string sidecar_path;
    CategoryMap category_map = CategoryMap::defaults();
};

/// Every pipeline hyperparameter in one place. Defaults match the
/// reference settings; every field can be overridden from the config
/// file, and ROLEPRED_BACKEND_URL overrides backend.base_url.
struct PipelineConfig {
    int prompt_max_tokens = 512;
    int concurrency = 8;
    GenerationConfig generation;
    ExtractionConfig extraction;
    SelectionConfig selection;
    MatchConfig match;
    BackendConfig backend;
    NerConfig ner;

    void validate() const;
};

PipelineConfig config_from_json_text(std::string_view json_text);
PipelineConfig load_config(const std::filesystem::path& path);

/// Applies ROLEPRED_BACKEND_URL when set.
void apply_env_overrides(PipelineConfig& config);

}  // namespace rolepred
