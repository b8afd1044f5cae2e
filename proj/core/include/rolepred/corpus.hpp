#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace rolepred {

/// Entity categories driving prompt template choice.
enum class EntityCategory { person, location, number, other };

std::string_view to_string(EntityCategory category);
EntityCategory entity_category_from_string(std::string_view name);

/// One source document. Each document describes a single event instance.
struct Document {
    std::string id;
    std::string title;
    std::vector<std::string> sentences;
    /// Inclusive (start, end) sentence ranges. In order, disjoint, and
    /// covering [0, sentences.size()) exactly.
    std::vector<std::pair<int, int>> paragraphs;

    /// Index of the paragraph containing the given sentence.
    int paragraph_of(int sentence_index) const;

    /// All sentences joined with single spaces (the QA context).
    std::string full_text() const;

    bool operator==(const Document&) const = default;
};

/// Gold roles and per-document gold arguments.
struct GoldAnnotation {
    /// Alias groups; each group is one gold role.
    std::vector<std::vector<std::string>> role_groups;
    /// document id -> canonical role -> gold argument strings.
    std::map<std::string, std::map<std::string, std::vector<std::string>>> arguments;

    bool operator==(const GoldAnnotation&) const = default;
};

struct Corpus {
    std::string event_type;
    std::vector<Document> documents;
    std::optional<GoldAnnotation> gold;

    const Document* find_document(std::string_view id) const;

    bool operator==(const Corpus&) const = default;
};

/// A recognized entity occurrence within a document sentence.
struct EntityMention {
    std::string text;
    int start_char = 0;
    int sentence_index = 0;
    int paragraph_index = 0;
    std::string raw_label;
    EntityCategory category = EntityCategory::other;

    bool operator==(const EntityMention&) const = default;
};

/// Throws ValidationError naming the first violated invariant.
void validate_corpus(const Corpus& corpus);

Corpus corpus_from_json_text(std::string_view json_text);
std::string corpus_to_json_text(const Corpus& corpus);

Corpus load_corpus(const std::filesystem::path& path);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

/// Number of distinct sentences over which the document's gold arguments
/// are scattered. Each argument counts at its first case-insensitive
/// mention; unfound arguments are skipped.
int arg_scatter(const Document& document,
                const std::map<std::string, std::vector<std::string>>& gold_args_for_doc);

struct CorpusStats {
    std::size_t num_documents = 0;
    std::size_t num_roles = 0;      // one per role group
    std::size_t num_arguments = 0;  // (document, role) pairs with gold arguments
    double mean_arg_scatter = 0.0;
    double mean_roles_per_event = 0.0;
};

/// Requires gold annotations; throws ValidationError otherwise.
CorpusStats corpus_stats(const Corpus& corpus);

/// Normalization applied to both sides of the leakage comparison.
std::string normalize_reference_sentence(std::string_view sentence);

/// Ids of documents sharing at least one sentence of more than 4 words
/// with the reference set. Reference entries are normalized internally.
std::vector<std::string> leakage_overlap(const Corpus& corpus,
                                         const std::set<std::string>& reference_sentences);

}  // namespace rolepred
