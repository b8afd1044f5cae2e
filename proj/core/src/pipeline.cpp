#include "rolepred/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "rolepred/errors.hpp"
#include "rolepred/generation.hpp"
#include "rolepred/http_backend.hpp"
#include "rolepred/mock_backend.hpp"
#include "rolepred/ner.hpp"

namespace rolepred {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Runs fn(0..n) under the concurrency limit. Results go into index-
/// addressed slots, so completion order cannot affect the output; the
/// lowest-index failure is the one rethrown.
template <typename Fn>
void parallel_for(std::size_t n, int concurrency, Fn&& fn) {
    if (n == 0) return;
    const std::size_t workers =
        std::min(static_cast<std::size_t>(std::max(concurrency, 1)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& thread : threads) thread.join();
    for (const auto& error : errors) {
        if (error) std::rethrow_exception(error);
    }
}

ordered_json cluster_to_json(const RoleCluster& cluster) {
    ordered_json j;
    j["members"] = cluster.members;
    j["representative"] = cluster.representative;
    j["importance"] = cluster.importance;
    j["size"] = cluster.size;
    return j;
}

ordered_json instance_to_json(const EventInstance& instance,
                              std::span<const RoleCluster> clusters) {
    ordered_json j;
    j["document_id"] = instance.document_id;
    ordered_json arguments = ordered_json::object();
    // Arguments serialize in cluster rank order.
    for (const auto& cluster : clusters) {
        auto it = instance.arguments.find(cluster.representative);
        if (it == instance.arguments.end()) continue;
        arguments[it->first] = {{"text", it->second.text}, {"score", it->second.score}};
    }
    // Keys outside the cluster set (hand-built results) keep map order.
    for (const auto& [role, argument] : instance.arguments) {
        if (!arguments.contains(role)) {
            arguments[role] = {{"text", argument.text}, {"score", argument.score}};
        }
    }
    j["arguments"] = std::move(arguments);
    return j;
}

}  // namespace

std::string result_to_json_text(const PipelineResult& result) {
    ordered_json j;
    j["event_type"] = result.event_type;
    auto clusters = ordered_json::array();
    for (const auto& cluster : result.clusters) clusters.push_back(cluster_to_json(cluster));
    j["clusters"] = std::move(clusters);
    auto instances = ordered_json::array();
    for (const auto& instance : result.instances) {
        instances.push_back(instance_to_json(instance, result.clusters));
    }
    j["instances"] = std::move(instances);
    return j.dump(2) + "\n";
}

PipelineResult result_from_json_text(std::string_view json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed result JSON: ") + e.what());
    }

    PipelineResult result;
    try {
        result.event_type = j.at("event_type").get<std::string>();
        for (const auto& cluster_json : j.at("clusters")) {
            RoleCluster cluster;
            cluster.members = cluster_json.at("members").get<std::vector<std::string>>();
            cluster.representative = cluster_json.at("representative").get<std::string>();
            cluster.importance = cluster_json.at("importance").get<double>();
            cluster.size = cluster_json.at("size").get<std::size_t>();
            result.clusters.push_back(std::move(cluster));
        }
        for (const auto& instance_json : j.at("instances")) {
            EventInstance instance;
            instance.document_id = instance_json.at("document_id").get<std::string>();
            for (const auto& [role, argument] : instance_json.at("arguments").items()) {
                instance.arguments[role] = {argument.at("text").get<std::string>(),
                                            argument.at("score").get<double>()};
            }
            result.instances.push_back(std::move(instance));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("result JSON does not match schema: ") + e.what());
    }

    for (const auto& cluster : result.clusters) {
        if (cluster.members.empty()) throw ValidationError("result cluster with no members");
        if (std::find(cluster.members.begin(), cluster.members.end(), cluster.representative) ==
            cluster.members.end()) {
            throw ValidationError("cluster representative '" + cluster.representative +
                                  "' is not a member");
        }
    }
    return result;
}

PipelineResult load_result(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open result file: " + path.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return result_from_json_text(content);
}

void save_result(const PipelineResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open result file for writing: " + path.string());
    out << result_to_json_text(result);
    if (!out) throw Error("failed writing result file: " + path.string());
}

Backends make_backends(const PipelineConfig& config, const Corpus& corpus) {
    Backends backends;
    if (config.backend.kind == BackendKind::mock) {
        MockFixtures fixtures;
        if (!config.backend.fixture_path.empty()) {
            fixtures = MockFixtures::load(config.backend.fixture_path, corpus);
        }
        backends.infill = std::make_unique<MockInfillBackend>(fixtures);
        backends.qa = std::make_unique<MockQaBackend>(std::move(fixtures), corpus);
        backends.embed = std::make_unique<HashedEmbedder>(config.backend.embed_dimensions);
    } else {
        backends.infill = std::make_unique<HttpInfillBackend>(config.backend.base_url);
        backends.qa = std::make_unique<HttpQaBackend>(config.backend.base_url);
        backends.embed = std::make_unique<HttpEmbedBackend>(config.backend.base_url);
    }
    return backends;
}

namespace {

std::unique_ptr<EntityAnnotator> make_annotator(const NerConfig& config) {
    if (config.annotator == AnnotatorKind::sidecar) {
        return std::make_unique<SidecarAnnotator>(config.sidecar_path);
    }
    return std::make_unique<FallbackAnnotator>();
}

/// Per document, each surviving cluster reports its representative's
/// argument, falling back to the highest-score member.
std::vector<EventInstance> assemble_instances(std::span<const RoleCluster> clusters,
                                              std::span<const EventInstance> full_instances) {
    std::vector<EventInstance> assembled;
    assembled.reserve(full_instances.size());
    for (const auto& full : full_instances) {
        EventInstance instance;
        instance.document_id = full.document_id;
        for (const auto& cluster : clusters) {
            auto rep = full.arguments.find(cluster.representative);
            if (rep != full.arguments.end()) {
                instance.arguments.emplace(cluster.representative, rep->second);
                continue;
            }
            const ExtractedArgument* best = nullptr;
            for (const auto& member : cluster.members) {
                auto it = full.arguments.find(member);
                if (it == full.arguments.end()) continue;
                if (best == nullptr || it->second.score > best->score) best = &it->second;
            }
            if (best != nullptr) instance.arguments.emplace(cluster.representative, *best);
        }
        assembled.push_back(std::move(instance));
    }
    return assembled;
}

std::vector<EventInstance> extract_full_instances(const Corpus& corpus,
                                                  std::span<const std::string> roles,
                                                  const PipelineConfig& config, QaBackend& qa) {
    std::vector<EventInstance> instances(corpus.documents.size());
    if (roles.empty()) {
        for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
            instances[i].document_id = corpus.documents[i].id;
        }
        return instances;
    }
    parallel_for(corpus.documents.size(), config.concurrency, [&](std::size_t i) {
        instances[i] = extract_event_instance(corpus.documents[i], roles, corpus.event_type,
                                              config.extraction, qa);
    });
    return instances;
}

}  // namespace

PipelineResult run_pipeline(const Corpus& corpus, const PipelineConfig& config,
                            InfillBackend& infill, QaBackend& qa) {
    config.validate();
    validate_corpus(corpus);

    const auto annotator = make_annotator(config.ner);

    std::vector<DocumentCandidates> per_document(corpus.documents.size());
    parallel_for(corpus.documents.size(), config.concurrency, [&](std::size_t i) {
        const Document& document = corpus.documents[i];
        const auto mentions = annotate(document, *annotator, config.ner.category_map);
        per_document[i] = generate_for_document(document, mentions, corpus.event_type,
                                                config.generation, infill,
                                                config.prompt_max_tokens);
    });

    const auto candidates = aggregate_candidates(per_document, corpus);

    std::vector<std::string> role_names;
    role_names.reserve(candidates.size());
    for (const auto& candidate : candidates) role_names.push_back(candidate.name);

    const auto full_instances = extract_full_instances(corpus, role_names, config, qa);

    const auto filtered = filter_roles(candidates, full_instances, config.selection);
    auto clusters = merge_roles(filtered, full_instances, config.selection);

    PipelineResult result;
    result.event_type = corpus.event_type;
    result.instances = assemble_instances(clusters, full_instances);
    result.clusters = std::move(clusters);
    return result;
}

PipelineResult run_pipeline(const std::filesystem::path& corpus_path,
                            const PipelineConfig& config, const std::filesystem::path& out_path) {
    const Corpus corpus = load_corpus(corpus_path);
    const Backends backends = make_backends(config, corpus);
    try {
        PipelineResult result = run_pipeline(corpus, config, *backends.infill, *backends.qa);
        save_result(result, out_path);
        return result;
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(out_path, ec);
        throw;
    }
}

PipelineResult extract_events(const Corpus& corpus, std::vector<RoleCluster> clusters,
                              const PipelineConfig& config, QaBackend& qa) {
    config.validate();
    validate_corpus(corpus);

    std::vector<std::string> roles;
    for (const auto& cluster : clusters) {
        for (const auto& member : cluster.members) {
            if (std::find(roles.begin(), roles.end(), member) == roles.end()) {
                roles.push_back(member);
            }
        }
    }

    const auto full_instances = extract_full_instances(corpus, roles, config, qa);

    PipelineResult result;
    result.event_type = corpus.event_type;
    result.instances = assemble_instances(clusters, full_instances);
    result.clusters = std::move(clusters);
    return result;
}

}  // namespace rolepred
