#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rolepred/config.hpp"
#include "rolepred/errors.hpp"
#include "rolepred/evaluation.hpp"
#include "rolepred/pipeline.hpp"

namespace {

using rolepred::PipelineConfig;

constexpr int kExitFailure = 1;
constexpr int kExitTransport = 2;

PipelineConfig resolve_config(const std::string& config_path, const std::string& backend_flag) {
    PipelineConfig config;
    if (!config_path.empty()) config = rolepred::load_config(config_path);
    if (backend_flag == "mock") config.backend.kind = rolepred::BackendKind::mock;
    if (backend_flag == "http") config.backend.kind = rolepred::BackendKind::http;
    rolepred::apply_env_overrides(config);
    return config;
}

void write_json(const std::string& out_path, const std::string& json_text) {
    if (out_path.empty()) return;
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw rolepred::Error("cannot open output file: " + out_path);
    out << json_text;
}

void print_cluster_table(const rolepred::PipelineResult& result) {
    std::printf("rank  size  importance  representative        members\n");
    for (std::size_t i = 0; i < result.clusters.size(); ++i) {
        const auto& cluster = result.clusters[i];
        std::string members;
        for (std::size_t m = 0; m < cluster.members.size(); ++m) {
            if (m > 0) members += ", ";
            members += cluster.members[m];
        }
        std::printf("%-4zu  %-4zu  %10.4f  %-20s  %s\n", i + 1, cluster.size, cluster.importance,
                    cluster.representative.c_str(), members.c_str());
    }
}

int cmd_predict_roles(const std::string& corpus_path, const std::string& config_path,
                      const std::string& backend_flag, const std::string& out_path) {
    const PipelineConfig config = resolve_config(config_path, backend_flag);
    config.validate();
    const auto result = rolepred::run_pipeline(corpus_path, config, out_path);
    print_cluster_table(result);
    return 0;
}

int cmd_extract_events(const std::string& corpus_path, const std::string& config_path,
                       const std::string& roles_path, const std::string& backend_flag,
                       const std::string& out_path) {
    const PipelineConfig config = resolve_config(config_path, backend_flag);
    config.validate();
    const auto corpus = rolepred::load_corpus(corpus_path);
    auto prior = rolepred::load_result(roles_path);
    const auto backends = rolepred::make_backends(config, corpus);
    const auto result =
        rolepred::extract_events(corpus, std::move(prior.clusters), config, *backends.qa);
    rolepred::save_result(result, out_path);

    std::printf("document              arguments\n");
    for (const auto& instance : result.instances) {
        std::printf("%-20s  %zu\n", instance.document_id.c_str(), instance.arguments.size());
    }
    return 0;
}

int cmd_evaluate_roles(const std::string& pred_path, const std::string& corpus_path,
                       const std::string& strategy, const std::string& config_path,
                       const std::string& out_path) {
    PipelineConfig config = resolve_config(config_path, "");
    config.match.strategy = rolepred::match_strategy_from_string(strategy);
    const auto corpus = rolepred::load_corpus(corpus_path);
    if (!corpus.gold) throw rolepred::ValidationError("corpus has no gold annotations");
    const auto result = rolepred::load_result(pred_path);
    const auto backends = rolepred::make_backends(config, corpus);

    const auto report =
        rolepred::score_roles(result.clusters, *corpus.gold, config.match, backends.embed.get());
    std::fputs(rolepred::eval_report_table(report).c_str(), stdout);
    write_json(out_path, rolepred::eval_report_to_json_text(report));
    return 0;
}

int cmd_evaluate_args(const std::string& pred_path, const std::string& corpus_path,
                      const std::string& strategy, const std::string& config_path,
                      const std::string& out_path) {
    PipelineConfig config = resolve_config(config_path, "");
    config.match.strategy = rolepred::match_strategy_from_string(strategy);
    const auto corpus = rolepred::load_corpus(corpus_path);
    if (!corpus.gold) throw rolepred::ValidationError("corpus has no gold annotations");
    const auto result = rolepred::load_result(pred_path);
    const auto backends = rolepred::make_backends(config, corpus);

    const auto alignment = rolepred::align_roles(result.clusters, *corpus.gold, config.match,
                                                 backends.embed.get());
    const auto report = rolepred::score_arguments(result.instances, *corpus.gold, alignment);
    std::fputs(rolepred::eval_report_table(report).c_str(), stdout);
    write_json(out_path, rolepred::eval_report_to_json_text(report));
    return 0;
}

int cmd_stats(const std::string& corpus_path, const std::string& out_path) {
    const auto corpus = rolepred::load_corpus(corpus_path);
    const auto stats = rolepred::corpus_stats(corpus);

    std::printf("event type            %s\n", corpus.event_type.c_str());
    std::printf("documents             %zu\n", stats.num_documents);
    std::printf("roles                 %zu\n", stats.num_roles);
    std::printf("arguments             %zu\n", stats.num_arguments);
    std::printf("mean arg scatter      %.4f\n", stats.mean_arg_scatter);
    std::printf("mean roles per event  %.4f\n", stats.mean_roles_per_event);

    nlohmann::ordered_json j;
    j["event_type"] = corpus.event_type;
    j["num_documents"] = stats.num_documents;
    j["num_roles"] = stats.num_roles;
    j["num_arguments"] = stats.num_arguments;
    j["mean_arg_scatter"] = stats.mean_arg_scatter;
    j["mean_roles_per_event"] = stats.mean_roles_per_event;
    write_json(out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_leakage_check(const std::string& corpus_path, const std::string& reference_path,
                      const std::string& out_path) {
    const auto corpus = rolepred::load_corpus(corpus_path);

    std::ifstream in(reference_path, std::ios::binary);
    if (!in) throw rolepred::ParseError("cannot open reference file: " + reference_path);
    std::set<std::string> reference;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) reference.insert(line);
    }

    const auto flagged = rolepred::leakage_overlap(corpus, reference);
    std::printf("flagged documents     %zu\n", flagged.size());
    for (const auto& id : flagged) std::printf("  %s\n", id.c_str());

    nlohmann::ordered_json j;
    j["flagged_documents"] = flagged;
    j["reference_sentences"] = reference.size();
    write_json(out_path, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Open-vocabulary argument role prediction pipeline"};
    app.require_subcommand(1);

    std::string corpus_path;
    std::string config_path;
    std::string backend_flag;
    std::string out_path;
    std::string pred_path;
    std::string roles_path;
    std::string reference_path;
    std::string strategy = "hard";

    auto* predict = app.add_subcommand("predict-roles", "Run the full role prediction pipeline");
    predict->add_option("--corpus", corpus_path, "Corpus JSON file")->required();
    predict->add_option("--config", config_path, "Pipeline config JSON file");
    predict->add_option("--backend", backend_flag, "Backend kind")
        ->check(CLI::IsMember({"mock", "http"}));
    predict->add_option("--out", out_path, "Result file")->required();

    auto* extract = app.add_subcommand("extract-events", "Extract events for an existing role set");
    extract->add_option("--corpus", corpus_path, "Corpus JSON file")->required();
    extract->add_option("--config", config_path, "Pipeline config JSON file");
    extract->add_option("--roles", roles_path, "Result file holding the clusters")->required();
    extract->add_option("--backend", backend_flag, "Backend kind")
        ->check(CLI::IsMember({"mock", "http"}));
    extract->add_option("--out", out_path, "Result file")->required();

    auto* eval_roles = app.add_subcommand("evaluate-roles", "Score predicted roles against gold");
    eval_roles->add_option("--pred", pred_path, "Prediction result file")->required();
    eval_roles->add_option("--corpus", corpus_path, "Corpus JSON file with gold")->required();
    eval_roles->add_option("--strategy", strategy, "Matching strategy")
        ->check(CLI::IsMember({"hard", "soft"}));
    eval_roles->add_option("--config", config_path, "Pipeline config JSON file");
    eval_roles->add_option("--out", out_path, "Report JSON file");

    auto* eval_args = app.add_subcommand("evaluate-args", "Score extracted arguments against gold");
    eval_args->add_option("--pred", pred_path, "Prediction result file")->required();
    eval_args->add_option("--corpus", corpus_path, "Corpus JSON file with gold")->required();
    eval_args->add_option("--strategy", strategy, "Alignment strategy")
        ->check(CLI::IsMember({"hard", "soft"}));
    eval_args->add_option("--config", config_path, "Pipeline config JSON file");
    eval_args->add_option("--out", out_path, "Report JSON file");

    auto* stats = app.add_subcommand("stats", "Corpus statistics");
    stats->add_option("--corpus", corpus_path, "Corpus JSON file with gold")->required();
    stats->add_option("--out", out_path, "Stats JSON file");

    auto* leakage = app.add_subcommand("leakage-check", "Flag documents sharing sentences");
    leakage->add_option("--corpus", corpus_path, "Corpus JSON file")->required();
    leakage->add_option("--reference", reference_path, "Reference sentences, one per line")
        ->required();
    leakage->add_option("--out", out_path, "Leakage JSON file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (predict->parsed()) {
            return cmd_predict_roles(corpus_path, config_path, backend_flag, out_path);
        }
        if (extract->parsed()) {
            return cmd_extract_events(corpus_path, config_path, roles_path, backend_flag, out_path);
        }
        if (eval_roles->parsed()) {
            return cmd_evaluate_roles(pred_path, corpus_path, strategy, config_path, out_path);
        }
        if (eval_args->parsed()) {
            return cmd_evaluate_args(pred_path, corpus_path, strategy, config_path, out_path);
        }
        if (stats->parsed()) {
            return cmd_stats(corpus_path, out_path);
        }
        if (leakage->parsed()) {
            return cmd_leakage_check(corpus_path, reference_path, out_path);
        }
    } catch (const rolepred::TransportError& e) {
        std::cerr << "transport error: " << e.what() << "\n";
        return kExitTransport;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
