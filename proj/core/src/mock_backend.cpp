#include "rolepred/mock_backend.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "rolepred/errors.hpp"
#include "rolepred/text.hpp"

namespace rolepred {

namespace {

bool consume_prefix(std::string_view& s, std::string_view prefix) {
    if (!s.starts_with(prefix)) return false;
    s.remove_prefix(prefix.size());
    return true;
}

bool consume_suffix(std::string_view& s, std::string_view suffix) {
    if (!s.ends_with(suffix)) return false;
    s.remove_suffix(suffix.size());
    return true;
}

}  // namespace

MockFixtures MockFixtures::load(const std::filesystem::path& path, const Corpus& corpus) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open fixture file: " + path.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(content, corpus);
}

MockFixtures MockFixtures::from_json_text(std::string_view json_text, const Corpus& corpus) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed fixture JSON: ") + e.what());
    }

    MockFixtures fixtures;
    try {
        if (j.contains("infill")) {
            for (const auto& [surface, entries] : j["infill"].items()) {
                auto& candidates = fixtures.infill[surface];
                for (const auto& entry : entries) {
                    candidates.push_back(
                        {entry.at("text").get<std::string>(), entry.at("score").get<double>()});
                }
            }
        }
        if (j.contains("qa")) {
            for (const auto& [role, docs] : j["qa"].items()) {
                for (const auto& [doc_id, entry] : docs.items()) {
                    fixtures.qa[role][doc_id] = {entry.at("answer").get<std::string>(),
                                                 entry.at("score").get<double>()};
                }
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("fixture JSON does not match schema: ") + e.what());
    }

    for (const auto& [surface, candidates] : fixtures.infill) {
        for (const auto& candidate : candidates) {
            if (!(candidate.score > 0.0 && candidate.score <= 1.0)) {
                throw ParseError("infill fixture score for '" + surface + "' outside (0, 1]");
            }
        }
    }
    for (const auto& [role, docs] : fixtures.qa) {
        for (const auto& [doc_id, argument] : docs) {
            if (argument.score < 0.0 || argument.score > 1.0) {
                throw ParseError("qa fixture score for ('" + role + "', '" + doc_id +
                                 "') outside [0, 1]");
            }
            const Document* doc = corpus.find_document(doc_id);
            if (doc == nullptr) {
                throw ParseError("qa fixture references unknown document '" + doc_id + "'");
            }
            if (doc->full_text().find(argument.text) == std::string::npos) {
                throw ParseError("qa fixture answer '" + argument.text +
                                 "' is not a substring of document '" + doc_id + "'");
            }
        }
    }
    return fixtures;
}

PromptEntity parse_prompt_entity(std::string_view prompt, std::string_view mask_token) {
    constexpr std::string_view kMarker = "According to this, ";
    const auto marker_pos = prompt.rfind(kMarker);
    if (marker_pos == std::string_view::npos) {
        throw ValidationError("prompt contains no recognizable template");
    }
    std::string_view tail = prompt.substr(marker_pos + kMarker.size());
    if (!consume_suffix(tail, ".")) {
        throw ValidationError("prompt template does not end with a period");
    }

    const std::string mask(mask_token);

    // NUMBER: the number of <mask> of this <event> is <entity>
    if (std::string_view rest = tail; consume_prefix(rest, "the number of " + mask + " of this ")) {
        const auto is_pos = rest.find(" is ");
        if (is_pos == std::string_view::npos) {
            throw ValidationError("malformed NUMBER prompt template");
        }
        return {std::string(rest.substr(is_pos + 4)), EntityCategory::number};
    }
    // OTHER: the <mask> of this <event> is <entity>
    if (std::string_view rest = tail; consume_prefix(rest, "the " + mask + " of this ")) {
        const auto is_pos = rest.find(" is ");
        if (is_pos == std::string_view::npos) {
            throw ValidationError("malformed OTHER prompt template");
        }
        return {std::string(rest.substr(is_pos + 4)), EntityCategory::other};
    }
    // LOCATION: the <mask> is <entity> in this <event>
    if (std::string_view rest = tail; consume_prefix(rest, "the " + mask + " is ")) {
        const auto in_pos = rest.rfind(" in this ");
        if (in_pos == std::string_view::npos) {
            throw ValidationError("malformed LOCATION prompt template");
        }
        return {std::string(rest.substr(0, in_pos)), EntityCategory::location};
    }
    // PERSON: <entity> play the role of <mask> in this <event>
    const std::string person_marker = " play the role of " + mask + " in this ";
    if (const auto play_pos = tail.find(person_marker); play_pos != std::string_view::npos) {
        return {std::string(tail.substr(0, play_pos)), EntityCategory::person};
    }
    throw ValidationError("prompt matches no known template");
}

MockInfillBackend::MockInfillBackend(MockFixtures fixtures) : fixtures_(std::move(fixtures)) {}

InfillResponse MockInfillBackend::infill(const InfillRequest& request) {
    const PromptEntity entity = parse_prompt_entity(request.prompt, request.mask_token);

    InfillResponse response;
    auto it = fixtures_.infill.find(entity.surface);
    if (it != fixtures_.infill.end()) {
        response.candidates = it->second;
        if (response.candidates.size() > static_cast<std::size_t>(request.num_return)) {
            response.candidates.resize(request.num_return);
        }
    } else {
        response.candidates.push_back({text::lowercase(to_string(entity.category)), 0.5});
    }
    return response;
}

MockQaBackend::MockQaBackend(MockFixtures fixtures, const Corpus& corpus)
    : fixtures_(std::move(fixtures)) {
    for (const auto& doc : corpus.documents) {
        doc_by_text_[doc.full_text()] = doc.id;
    }
}

QaResponse MockQaBackend::answer(const QaRequest& request) {
    // "What is the <role> in this <event> event?"
    constexpr std::string_view kPrefix = "What is the ";
    constexpr std::string_view kInfix = " in this ";
    std::string_view question = request.question;
    QaResponse miss;  // unanswerable, score 0.0

    if (!consume_prefix(question, kPrefix)) return miss;
    const auto infix_pos = question.rfind(kInfix);
    if (infix_pos == std::string_view::npos) return miss;
    const std::string role(question.substr(0, infix_pos));

    auto doc_it = doc_by_text_.find(request.context);
    if (doc_it == doc_by_text_.end()) return miss;

    auto role_it = fixtures_.qa.find(role);
    if (role_it == fixtures_.qa.end()) return miss;
    auto answer_it = role_it->second.find(doc_it->second);
    if (answer_it == role_it->second.end()) return miss;

    const auto& argument = answer_it->second;
    QaResponse response;
    response.answer = argument.text;
    response.start_char = static_cast<int>(request.context.find(argument.text));
    response.score = argument.score;
    return response;
}

std::uint32_t fnv1a32(std::string_view data) {
    std::uint32_t hash = 2166136261u;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 16777619u;
    }
    return hash;
}

HashedEmbedder::HashedEmbedder(int dimensions) : dimensions_(dimensions) {
    if (dimensions_ < 1) throw ValidationError("embedder dimensions must be >= 1");
}

std::vector<double> HashedEmbedder::embed_one(std::string_view input) const {
    std::vector<double> vector(static_cast<std::size_t>(dimensions_), 0.0);
    const auto tokens = text::tokenize(text::lowercase(input));
    for (const auto& token : tokens) {
        vector[fnv1a32(token) % static_cast<std::uint32_t>(dimensions_)] += 1.0;
    }
    double norm = 0.0;
    for (double v : vector) norm += v * v;
    if (norm > 0.0) {
        norm = std::sqrt(norm);
        for (double& v : vector) v /= norm;
    }
    return vector;
}

EmbedResponse HashedEmbedder::embed(const EmbedRequest& request) {
    EmbedResponse response;
    response.vectors.reserve(request.texts.size());
    for (const auto& input : request.texts) response.vectors.push_back(embed_one(input));
    return response;
}

}  // namespace rolepred
