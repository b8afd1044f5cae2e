#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rolepred/backend.hpp"
#include "rolepred/corpus.hpp"

namespace rolepred {

struct GenerationConfig {
    int num_return = 10;
    int max_span_tokens = 3;  // valid range 1..5
    int beams = 200;

    void validate() const;
};

/// Lowercase, strip edge punctuation and whitespace, collapse internal
/// whitespace, drop leading articles. Empty result means rejection.
std::string normalize_role(std::string_view raw);

struct RoleScore {
    std::string name;
    double score = 0.0;

    bool operator==(const RoleScore&) const = default;
};

struct EntityCandidates {
    EntityMention entity;
    std::vector<RoleScore> candidates;
};

struct DocumentCandidates {
    std::string document_id;
    std::vector<EntityCandidates> entities;
};

/// One backend call per distinct entity surface (first mention wins).
/// Results are normalized, length-capped, deduplicated at max score, and
/// truncated to num_return per entity.
DocumentCandidates generate_for_document(const Document& document,
                                         std::span<const EntityMention> entities,
                                         std::string_view event_type,
                                         const GenerationConfig& config, InfillBackend& backend,
                                         int prompt_max_tokens = 512);

/// A role phrase accumulated across entities and documents.
struct CandidateRole {
    std::string name;
    std::set<std::string> doc_ids;
    std::vector<double> scores;  // kept sorted ascending for determinism
    double importance = 0.0;

    bool operator==(const CandidateRole&) const = default;
};

/// importance = (coverage fraction) x (mean backend score), in (0, 1].
double compute_importance(const CandidateRole& candidate, std::size_t total_docs);

/// Union by role name across all documents and entities, sorted by
/// importance descending with lexicographic tie-break. Order-independent
/// in its input.
std::vector<CandidateRole> aggregate_candidates(std::span<const DocumentCandidates> per_document,
                                                const Corpus& corpus);

}  // namespace rolepred
