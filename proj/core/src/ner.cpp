#include "rolepred/ner.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "rolepred/errors.hpp"
#include "rolepred/text.hpp"

namespace rolepred {

namespace {

std::string uppercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

const std::regex& time_pattern() {
    static const std::regex re(R"((\d{1,2}:\d{2}(?: ?[AP]M)?))", std::regex::icase);
    return re;
}

const std::regex& date_pattern() {
    static const std::regex re(
        R"(((?:January|February|March|April|May|June|July|August|September|October|November|December))"
        R"( \d{1,2}(?:, \d{4})?))",
        std::regex::icase);
    return re;
}

void append_pattern_mentions(const std::string& sentence, int sentence_index,
                             const std::regex& pattern, const char* label,
                             std::vector<RawMention>& out) {
    auto begin = std::sregex_iterator(sentence.begin(), sentence.end(), pattern);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        out.push_back({it->str(), static_cast<int>(it->position()), sentence_index, label});
    }
}

void append_number_mentions(const std::string& sentence, int sentence_index,
                            std::vector<RawMention>& out) {
    std::size_t i = 0;
    while (i < sentence.size()) {
        while (i < sentence.size() && std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
        std::size_t start = i;
        while (i < sentence.size() && !std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
        if (i == start) continue;
        std::size_t begin = start;
        std::size_t end = i;
        auto is_punct = [&](std::size_t pos) {
            return std::ispunct(static_cast<unsigned char>(sentence[pos])) != 0;
        };
        while (begin < end && is_punct(begin)) ++begin;
        while (end > begin && is_punct(end - 1)) --end;
        std::string token = sentence.substr(begin, end - begin);
        if (token.empty()) continue;
        if (std::none_of(token.begin(), token.end(),
                         [](unsigned char c) { return std::isdigit(c) != 0; })) {
            continue;
        }
        out.push_back({std::move(token), static_cast<int>(begin), sentence_index, "CARDINAL"});
    }
}

}  // namespace

EntityCategory CategoryMap::categorize(std::string_view raw_label) const {
    const std::string label = uppercase(raw_label);
    for (const auto& [pattern, category] : rules) {
        if (label == pattern) return category;
    }
    return fallback;
}

CategoryMap CategoryMap::defaults() {
    CategoryMap map;
    map.rules = {
        {"PERSON", EntityCategory::person},   {"GPE", EntityCategory::location},
        {"LOC", EntityCategory::location},    {"FAC", EntityCategory::location},
        {"CARDINAL", EntityCategory::number}, {"MONEY", EntityCategory::number},
        {"PERCENT", EntityCategory::number},  {"QUANTITY", EntityCategory::number},
        {"ORDINAL", EntityCategory::number},
    };
    map.fallback = EntityCategory::other;
    return map;
}

SidecarAnnotator::SidecarAnnotator(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open sidecar file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed sidecar JSON: ") + e.what());
    }
    try {
        for (const auto& [doc_id, entries] : j.items()) {
            auto& mentions = mentions_[doc_id];
            for (const auto& entry : entries) {
                RawMention mention;
                mention.text = entry.at("text").get<std::string>();
                mention.start_char = entry.at("start_char").get<int>();
                mention.sentence_index = entry.at("sentence_index").get<int>();
                mention.raw_label = entry.at("raw_label").get<std::string>();
                mentions.push_back(std::move(mention));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("sidecar JSON does not match schema: ") + e.what());
    }
}

std::vector<RawMention> SidecarAnnotator::annotate(const Document& document) const {
    auto it = mentions_.find(document.id);
    if (it == mentions_.end()) return {};
    return it->second;
}

std::vector<RawMention> FallbackAnnotator::annotate(const Document& document) const {
    std::vector<RawMention> mentions;
    for (std::size_t s = 0; s < document.sentences.size(); ++s) {
        const auto& sentence = document.sentences[s];
        const int index = static_cast<int>(s);
        append_pattern_mentions(sentence, index, time_pattern(), "TIME", mentions);
        append_pattern_mentions(sentence, index, date_pattern(), "DATE", mentions);
        append_number_mentions(sentence, index, mentions);
    }
    return mentions;
}

std::vector<EntityMention> annotate(const Document& document, const EntityAnnotator& annotator,
                                    const CategoryMap& categories) {
    std::vector<RawMention> raw = annotator.annotate(document);

    for (const auto& mention : raw) {
        if (mention.sentence_index < 0 ||
            mention.sentence_index >= static_cast<int>(document.sentences.size())) {
            throw ValidationError("mention '" + mention.text + "' references unknown sentence index " +
                                  std::to_string(mention.sentence_index) + " in document '" +
                                  document.id + "'");
        }
        const auto& sentence = document.sentences[mention.sentence_index];
        if (mention.start_char < 0 ||
            mention.start_char + mention.text.size() > sentence.size()) {
            throw ValidationError("mention '" + mention.text + "' is out of sentence bounds in document '" +
                                  document.id + "'");
        }
    }

    // Duplicate spans collapse to their first occurrence.
    std::vector<RawMention> unique;
    for (const auto& mention : raw) {
        bool duplicate = std::any_of(unique.begin(), unique.end(), [&](const RawMention& kept) {
            return kept.sentence_index == mention.sentence_index &&
                   kept.start_char == mention.start_char && kept.text == mention.text;
        });
        if (!duplicate) unique.push_back(mention);
    }

    // Overlaps within a sentence: longer span wins, tie -> earlier start.
    std::stable_sort(unique.begin(), unique.end(), [](const RawMention& a, const RawMention& b) {
        if (a.sentence_index != b.sentence_index) return a.sentence_index < b.sentence_index;
        if (a.text.size() != b.text.size()) return a.text.size() > b.text.size();
        if (a.start_char != b.start_char) return a.start_char < b.start_char;
        return a.raw_label < b.raw_label;
    });
    std::vector<RawMention> kept;
    for (const auto& mention : unique) {
        const int begin = mention.start_char;
        const int end = begin + static_cast<int>(mention.text.size());
        bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const RawMention& other) {
            if (other.sentence_index != mention.sentence_index) return false;
            const int other_begin = other.start_char;
            const int other_end = other_begin + static_cast<int>(other.text.size());
            return begin < other_end && other_begin < end;
        });
        if (!overlaps) kept.push_back(mention);
    }

    std::sort(kept.begin(), kept.end(), [](const RawMention& a, const RawMention& b) {
        if (a.sentence_index != b.sentence_index) return a.sentence_index < b.sentence_index;
        return a.start_char < b.start_char;
    });

    std::vector<EntityMention> mentions;
    mentions.reserve(kept.size());
    for (auto& raw_mention : kept) {
        EntityMention mention;
        mention.text = std::move(raw_mention.text);
        mention.start_char = raw_mention.start_char;
        mention.sentence_index = raw_mention.sentence_index;
        mention.paragraph_index = document.paragraph_of(raw_mention.sentence_index);
        mention.raw_label = std::move(raw_mention.raw_label);
        mention.category = categories.categorize(mention.raw_label);
        mentions.push_back(std::move(mention));
    }
    return mentions;
}

std::vector<EntityMention> fallback_annotate(const Document& document) {
    return annotate(document, FallbackAnnotator{});
}

}  // namespace rolepred
