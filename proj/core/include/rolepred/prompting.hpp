#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rolepred/corpus.hpp"

namespace rolepred {

/// Mask placeholder spelled in the wire protocol. Backends map it to
/// their own sentinel.
inline constexpr std::string_view kMaskToken = "<MASK_SPAN>";

/// An infilling prompt: context sentences followed by the category
/// template, which embeds the entity surface and the event type.
struct Prompt {
    std::string text;
    EntityMention entity;
    std::string event_type;
    /// Context split at sentence boundaries; truncation drops from the
    /// front and never drops the last (entity) sentence.
    std::vector<std::string> context_sentences;
    std::string template_text;
};

/// Sentences of the entity's paragraph from the paragraph start up to and
/// including the entity's sentence.
std::vector<std::string> context_sentences(const Document& document, const EntityMention& entity);

/// context_sentences joined with single spaces.
std::string build_context(const Document& document, const EntityMention& entity);

/// The category template instantiated with the entity surface and event type.
std::string render_template(EntityCategory category, std::string_view entity_text,
                            std::string_view event_type);

Prompt build_prompt(std::string_view context, const EntityMention& entity,
                    std::string_view event_type);

/// Builds the prompt from the document directly, keeping sentence
/// boundaries available for truncation.
Prompt build_prompt(const Document& document, const EntityMention& entity,
                    std::string_view event_type);

/// Enforces the whitespace-token budget: drops whole sentences from the
/// front of the context, then hard-truncates leading tokens. The template
/// suffix is preserved byte for byte.
Prompt truncate_prompt(Prompt prompt, int max_tokens = 512);

}  // namespace rolepred
