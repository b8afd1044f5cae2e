#include "rolepred/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rolepred/errors.hpp"

namespace rolepred {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& section) {
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) {
            throw ParseError("unknown config key '" + key + "' in " + section);
        }
    }
}

void parse_generation(const json& j, GenerationConfig& config) {
    reject_unknown_keys(j, {"num_return", "max_span_tokens", "beams"}, "generation");
    config.num_return = j.value("num_return", config.num_return);
    config.max_span_tokens = j.value("max_span_tokens", config.max_span_tokens);
    config.beams = j.value("beams", config.beams);
}

void parse_extraction(const json& j, ExtractionConfig& config) {
    reject_unknown_keys(j, {"qa_threshold"}, "extraction");
    config.qa_threshold = j.value("qa_threshold", config.qa_threshold);
}

void parse_selection(const json& j, SelectionConfig& config) {
    reject_unknown_keys(j, {"coverage_threshold", "merge_threshold", "argument_equality"},
                        "selection");
    config.coverage_threshold = j.value("coverage_threshold", config.coverage_threshold);
    config.merge_threshold = j.value("merge_threshold", config.merge_threshold);
    if (j.contains("argument_equality")) {
        const auto mode = j["argument_equality"].get<std::string>();
        if (mode == "exact_normalized") {
            config.argument_equality = ArgumentEquality::exact_normalized;
        } else if (mode == "datetime_aware") {
            config.argument_equality = ArgumentEquality::datetime_aware;
        } else {
            throw ParseError("unknown argument_equality '" + mode + "'");
        }
    }
}

void parse_match(const json& j, MatchConfig& config) {
    reject_unknown_keys(j, {"strategy", "soft_threshold", "stopwords", "stopword_filtering"},
                        "match");
    if (j.contains("strategy")) {
        config.strategy = match_strategy_from_string(j["strategy"].get<std::string>());
    }
    config.soft_threshold = j.value("soft_threshold", config.soft_threshold);
    config.stopword_filtering = j.value("stopword_filtering", config.stopword_filtering);
    if (j.contains("stopwords")) {
        config.stopwords.clear();
        for (const auto& word : j["stopwords"]) config.stopwords.insert(word.get<std::string>());
    }
}

void parse_backend(const json& j, BackendConfig& config) {
    reject_unknown_keys(j, {"kind", "base_url", "fixture_path", "embed_dimensions"}, "backend");
    if (j.contains("kind")) {
        const auto kind = j["kind"].get<std::string>();
        if (kind == "mock") {
            config.kind = BackendKind::mock;
        } else if (kind == "http") {
            config.kind = BackendKind::http;
        } else {
            throw ParseError("unknown backend kind '" + kind + "'");
        }
    }
    config.base_url = j.value("base_url", config.base_url);
    config.fixture_path = j.value("fixture_path", config.fixture_path);
    config.embed_dimensions = j.value("embed_dimensions", config.embed_dimensions);
}

void parse_ner(const json& j, NerConfig& config) {
    reject_unknown_keys(j, {"annotator", "sidecar_path", "rules", "default"}, "ner");
    if (j.contains("annotator")) {
        const auto kind = j["annotator"].get<std::string>();
        if (kind == "fallback") {
            config.annotator = AnnotatorKind::fallback;
        } else if (kind == "sidecar") {
            config.annotator = AnnotatorKind::sidecar;
        } else {
            throw ParseError("unknown annotator '" + kind + "'");
        }
    }
    config.sidecar_path = j.value("sidecar_path", config.sidecar_path);
    if (j.contains("rules")) {
        config.category_map.rules.clear();
        for (const auto& rule : j["rules"]) {
            if (!rule.is_array() || rule.size() != 2) {
                throw ParseError("ner rule must be a [label, category] pair");
            }
            config.category_map.rules.emplace_back(
                rule[0].get<std::string>(),
                entity_category_from_string(rule[1].get<std::string>()));
        }
    }
    if (j.contains("default")) {
        config.category_map.fallback =
            entity_category_from_string(j["default"].get<std::string>());
    }
}

}  // namespace

void PipelineConfig::validate() const {
    if (prompt_max_tokens < 1) throw ValidationError("prompt_max_tokens must be >= 1");
    if (concurrency < 1) throw ValidationError("concurrency must be >= 1");
    generation.validate();
    extraction.validate();
    selection.validate();
    match.validate();
    if (backend.embed_dimensions < 1) throw ValidationError("embed_dimensions must be >= 1");
    if (backend.kind == BackendKind::http && backend.base_url.empty()) {
        throw ValidationError("http backend requires backend.base_url (or ROLEPRED_BACKEND_URL)");
    }
    if (ner.annotator == AnnotatorKind::sidecar && ner.sidecar_path.empty()) {
        throw ValidationError("sidecar annotator requires ner.sidecar_path");
    }
}

PipelineConfig config_from_json_text(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed config JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config must be a JSON object");

    reject_unknown_keys(j,
                        {"prompt_max_tokens", "concurrency", "generation", "extraction",
                         "selection", "match", "backend", "ner"},
                        "config");

    PipelineConfig config;
    try {
        config.prompt_max_tokens = j.value("prompt_max_tokens", config.prompt_max_tokens);
        config.concurrency = j.value("concurrency", config.concurrency);
        if (j.contains("generation")) parse_generation(j["generation"], config.generation);
        if (j.contains("extraction")) parse_extraction(j["extraction"], config.extraction);
        if (j.contains("selection")) parse_selection(j["selection"], config.selection);
        if (j.contains("match")) parse_match(j["match"], config.match);
        if (j.contains("backend")) parse_backend(j["backend"], config.backend);
        if (j.contains("ner")) parse_ner(j["ner"], config.ner);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config JSON does not match schema: ") + e.what());
    }
    return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open config file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json_text(buffer.str());
}

void apply_env_overrides(PipelineConfig& config) {
    if (const char* url = std::getenv("ROLEPRED_BACKEND_URL"); url != nullptr && *url != '\0') {
        config.backend.base_url = url;
    }
}

}  // namespace rolepred
