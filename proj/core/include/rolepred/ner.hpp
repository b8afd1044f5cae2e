#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rolepred/corpus.hpp"

namespace rolepred {

/// Maps raw NER labels to the four prompt categories. Rules are tried in
/// order, first match wins; unmatched labels fall through to `fallback`.
struct CategoryMap {
    std::vector<std::pair<std::string, EntityCategory>> rules;
    EntityCategory fallback = EntityCategory::other;

    EntityCategory categorize(std::string_view raw_label) const;

    /// PERSON -> PERSON; GPE/LOC/FAC -> LOCATION;
    /// CARDINAL/MONEY/PERCENT/QUANTITY/ORDINAL -> NUMBER; rest -> OTHER.
    static CategoryMap defaults();
};

/// Annotator output before categories and paragraph indices are assigned.
struct RawMention {
    std::string text;
    int start_char = 0;
    int sentence_index = 0;
    std::string raw_label;

    bool operator==(const RawMention&) const = default;
};

class EntityAnnotator {
  public:
    virtual ~EntityAnnotator() = default;
    virtual std::vector<RawMention> annotate(const Document& document) const = 0;
};

/// Serves precomputed mentions from a sidecar annotation file:
/// {"doc_id": [{"text", "start_char", "sentence_index", "raw_label"}]}.
class SidecarAnnotator : public EntityAnnotator {
  public:
    explicit SidecarAnnotator(const std::filesystem::path& path);

    std::vector<RawMention> annotate(const Document& document) const override;

  private:
    std::map<std::string, std::vector<RawMention>> mentions_;
};

/// Deterministic built-in annotator. Emits NUMBER mentions for digit
/// tokens and OTHER mentions for date/time patterns; never emits PERSON
/// or LOCATION.
class FallbackAnnotator : public EntityAnnotator {
  public:
    std::vector<RawMention> annotate(const Document& document) const override;
};

/// Validates, categorizes, resolves overlaps (longer span wins, tie goes
/// to the earlier start), collapses duplicate spans, and orders mentions
/// by (sentence_index, start_char).
std::vector<EntityMention> annotate(const Document& document, const EntityAnnotator& annotator,
                                    const CategoryMap& categories = CategoryMap::defaults());

std::vector<EntityMention> fallback_annotate(const Document& document);

}  // namespace rolepred
