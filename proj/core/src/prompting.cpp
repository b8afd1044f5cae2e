#include "rolepred/prompting.hpp"

#include "rolepred/errors.hpp"
#include "rolepred/text.hpp"

namespace rolepred {

namespace {

std::string compose(std::string_view context, std::string_view template_text) {
    if (context.empty()) return std::string(template_text);
    std::string out;
    out.reserve(context.size() + 1 + template_text.size());
    out.append(context);
    out.push_back(' ');
    out.append(template_text);
    return out;
}

}  // namespace

std::vector<std::string> context_sentences(const Document& document, const EntityMention& entity) {
    if (entity.sentence_index < 0 ||
        entity.sentence_index >= static_cast<int>(document.sentences.size())) {
        throw ValidationError("entity '" + entity.text + "' does not belong to document '" +
                              document.id + "': sentence index out of range");
    }
    if (entity.paragraph_index < 0 ||
        entity.paragraph_index >= static_cast<int>(document.paragraphs.size())) {
        throw ValidationError("entity '" + entity.text + "' does not belong to document '" +
                              document.id + "': paragraph index out of range");
    }
    const auto& [start, end] = document.paragraphs[entity.paragraph_index];
    if (entity.sentence_index < start || entity.sentence_index > end) {
        throw ValidationError("entity '" + entity.text + "' sentence " +
                              std::to_string(entity.sentence_index) + " lies outside paragraph " +
                              std::to_string(entity.paragraph_index) + " of document '" +
                              document.id + "'");
    }
    // Sentences after the entity's sentence are irrelevant and removed.
    return {document.sentences.begin() + start,
            document.sentences.begin() + entity.sentence_index + 1};
}

std::string build_context(const Document& document, const EntityMention& entity) {
    return text::join(context_sentences(document, entity));
}

std::string render_template(EntityCategory category, std::string_view entity_text,
                            std::string_view event_type) {
    std::string entity(entity_text);
    std::string event(event_type);
    std::string mask(kMaskToken);
    switch (category) {
        case EntityCategory::person:
            return "According to this, " + entity + " play the role of " + mask + " in this " +
                   event + ".";
        case EntityCategory::location:
            return "According to this, the " + mask + " is " + entity + " in this " + event + ".";
        case EntityCategory::number:
            return "According to this, the number of " + mask + " of this " + event + " is " +
                   entity + ".";
        case EntityCategory::other:
            return "According to this, the " + mask + " of this " + event + " is " + entity + ".";
    }
    throw Error("unknown entity category");
}

Prompt build_prompt(std::string_view context, const EntityMention& entity,
                    std::string_view event_type) {
    Prompt prompt;
    prompt.entity = entity;
    prompt.event_type = std::string(event_type);
    prompt.template_text = render_template(entity.category, entity.text, event_type);
    if (!context.empty()) prompt.context_sentences.emplace_back(context);
    prompt.text = compose(context, prompt.template_text);
    return prompt;
}

Prompt build_prompt(const Document& document, const EntityMention& entity,
                    std::string_view event_type) {
    Prompt prompt;
    prompt.entity = entity;
    prompt.event_type = std::string(event_type);
    prompt.template_text = render_template(entity.category, entity.text, event_type);
    prompt.context_sentences = context_sentences(document, entity);
    prompt.text = compose(text::join(prompt.context_sentences), prompt.template_text);
    return prompt;
}

Prompt truncate_prompt(Prompt prompt, int max_tokens) {
    const std::size_t template_tokens = text::count_tokens(prompt.template_text);
    if (max_tokens < static_cast<int>(template_tokens) + 1) {
        throw ValidationError("max_tokens " + std::to_string(max_tokens) +
                              " is below the template length plus one (" +
                              std::to_string(template_tokens + 1) + ")");
    }
    if (text::count_tokens(prompt.text) <= static_cast<std::size_t>(max_tokens)) return prompt;

    const std::size_t context_budget = static_cast<std::size_t>(max_tokens) - template_tokens;

    auto context_tokens = [&] {
        std::size_t n = 0;
        for (const auto& sentence : prompt.context_sentences) n += text::count_tokens(sentence);
        return n;
    };

    // The last context sentence is the entity's sentence and is kept.
    while (prompt.context_sentences.size() > 1 && context_tokens() > context_budget) {
        prompt.context_sentences.erase(prompt.context_sentences.begin());
    }

    std::string context = text::join(prompt.context_sentences);
    if (text::count_tokens(context) > context_budget) {
        auto tokens = text::tokenize(context);
        std::vector<std::string> tail(tokens.end() - static_cast<std::ptrdiff_t>(context_budget),
                                      tokens.end());
        context = text::join(tail);
        prompt.context_sentences = {context};
    }

    prompt.text = compose(context, prompt.template_text);
    return prompt;
}

}  // namespace rolepred
