#include "rolepred/generation.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <numeric>

#include "rolepred/errors.hpp"
#include "rolepred/text.hpp"

namespace rolepred {

void GenerationConfig::validate() const {
    if (num_return < 1) throw ValidationError("num_return must be >= 1");
    if (max_span_tokens < 1 || max_span_tokens > 5) {
        throw ValidationError("max_span_tokens must be in [1, 5]");
    }
    if (beams < num_return) throw ValidationError("beams must be >= num_return");
}

std::string normalize_role(std::string_view raw) {
    std::string current = text::lowercase(raw);
    for (;;) {
        std::string next = text::collapse_whitespace(text::strip_edge_punct(current));
        auto tokens = text::tokenize(next);
        std::size_t skip = 0;
        while (skip < tokens.size() &&
               (tokens[skip] == "the" || tokens[skip] == "a" || tokens[skip] == "an")) {
            ++skip;
        }
        if (skip > 0) {
            next = text::join(std::span(tokens).subspan(skip));
        }
        if (next == current) return current;
        current = std::move(next);
    }
}

DocumentCandidates generate_for_document(const Document& document,
                                         std::span<const EntityMention> entities,
                                         std::string_view event_type,
                                         const GenerationConfig& config, InfillBackend& backend,
                                         int prompt_max_tokens) {
    config.validate();

    DocumentCandidates result;
    result.document_id = document.id;

    std::set<std::string> seen_surfaces;
    for (const auto& entity : entities) {
        if (!seen_surfaces.insert(entity.text).second) continue;

        Prompt prompt = truncate_prompt(build_prompt(document, entity, event_type),
                                        prompt_max_tokens);
        InfillRequest request;
        request.prompt = prompt.text;
        request.num_return = config.num_return;
        request.max_span_tokens = config.max_span_tokens;
        request.beams = config.beams;

        InfillResponse response = backend.infill(request);
        validate_response(request, response);
        if (response.candidates.size() > static_cast<std::size_t>(config.num_return)) {
            std::cerr << "warning: backend returned " << response.candidates.size()
                      << " candidates for entity '" << entity.text << "' (num_return="
                      << config.num_return << "), truncating\n";
            response.candidates.resize(config.num_return);
        }

        EntityCandidates entity_result;
        entity_result.entity = entity;
        for (const auto& candidate : response.candidates) {
            std::string name = normalize_role(candidate.text);
            if (name.empty()) continue;
            if (text::count_tokens(name) > static_cast<std::size_t>(config.max_span_tokens)) {
                continue;
            }
            auto existing = std::find_if(entity_result.candidates.begin(),
                                         entity_result.candidates.end(),
                                         [&](const RoleScore& r) { return r.name == name; });
            if (existing != entity_result.candidates.end()) {
                existing->score = std::max(existing->score, candidate.score);
            } else {
                entity_result.candidates.push_back({std::move(name), candidate.score});
            }
        }
        result.entities.push_back(std::move(entity_result));
    }
    return result;
}

double compute_importance(const CandidateRole& candidate, std::size_t total_docs) {
    if (total_docs == 0) throw ValidationError("compute_importance requires total_docs >= 1");
    if (candidate.doc_ids.empty() || candidate.scores.empty()) {
        throw ValidationError("candidate role '" + candidate.name + "' has no provenance");
    }
    const double coverage =
        static_cast<double>(candidate.doc_ids.size()) / static_cast<double>(total_docs);
    const double mean_score =
        std::accumulate(candidate.scores.begin(), candidate.scores.end(), 0.0) /
        static_cast<double>(candidate.scores.size());
    return coverage * mean_score;
}

std::vector<CandidateRole> aggregate_candidates(std::span<const DocumentCandidates> per_document,
                                                const Corpus& corpus) {
    std::map<std::string, CandidateRole> by_name;
    for (const auto& doc_result : per_document) {
        for (const auto& entity_result : doc_result.entities) {
            for (const auto& role : entity_result.candidates) {
                auto& candidate = by_name[role.name];
                candidate.name = role.name;
                candidate.doc_ids.insert(doc_result.document_id);
                candidate.scores.push_back(role.score);
            }
        }
    }

    std::vector<CandidateRole> candidates;
    candidates.reserve(by_name.size());
    for (auto& [name, candidate] : by_name) {
        // Canonical score order makes the mean independent of arrival order.
        std::sort(candidate.scores.begin(), candidate.scores.end());
        candidate.importance = compute_importance(candidate, corpus.documents.size());
        candidates.push_back(std::move(candidate));
    }
    std::sort(candidates.begin(), candidates.end(), [](const CandidateRole& a, const CandidateRole& b) {
        if (a.importance != b.importance) return a.importance > b.importance;
        return a.name < b.name;
    });
    return candidates;
}

}  // namespace rolepred
