#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rolepred/backend.hpp"
#include "rolepred/corpus.hpp"
#include "rolepred/extraction.hpp"

namespace rolepred {

/// Deterministic fixtures backing the mock backends:
/// {"infill": {surface: [{"text", "score"}, ...]},
///  "qa": {role: {doc_id: {"answer", "score"}}}}
struct MockFixtures {
    std::map<std::string, std::vector<InfillCandidate>> infill;  // entity surface -> candidates
    std::map<std::string, std::map<std::string, ExtractedArgument>> qa;  // role -> doc -> answer

    /// Validates score ranges and that every QA answer is a substring of
    /// its document.
    static MockFixtures load(const std::filesystem::path& path, const Corpus& corpus);
    static MockFixtures from_json_text(std::string_view json_text, const Corpus& corpus);
};

/// Pure function of (request, fixtures). The entity surface and category
/// are recovered from the prompt's template suffix; fixture misses fall
/// back to the lowercased category name at score 0.5.
class MockInfillBackend : public InfillBackend {
  public:
    explicit MockInfillBackend(MockFixtures fixtures);

    InfillResponse infill(const InfillRequest& request) override;

  private:
    MockFixtures fixtures_;
};

/// Answers from the (role, document) fixture table; the document is
/// identified by its full text. Misses are unanswerable at score 0.
class MockQaBackend : public QaBackend {
  public:
    MockQaBackend(MockFixtures fixtures, const Corpus& corpus);

    QaResponse answer(const QaRequest& request) override;

  private:
    MockFixtures fixtures_;
    std::map<std::string, std::string> doc_by_text_;
};

std::uint32_t fnv1a32(std::string_view data);

/// Deterministic bag-of-words embedder: tokens hashed with FNV-1a into
/// `dimensions` buckets, counted, L2-normalized. Empty text embeds to the
/// zero vector.
class HashedEmbedder : public EmbedBackend {
  public:
    explicit HashedEmbedder(int dimensions = 256);

    EmbedResponse embed(const EmbedRequest& request) override;

    std::vector<double> embed_one(std::string_view text) const;

    int dimensions() const { return dimensions_; }

  private:
    int dimensions_;
};

/// Parsed back out of a prompt by the mock infill backend.
struct PromptEntity {
    std::string surface;
    EntityCategory category = EntityCategory::other;
};

/// Recovers the entity surface and category from the template suffix of a
/// prompt. Throws ValidationError when the prompt matches no template.
PromptEntity parse_prompt_entity(std::string_view prompt, std::string_view mask_token);

}  // namespace rolepred
