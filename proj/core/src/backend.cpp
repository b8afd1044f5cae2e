#include "rolepred/backend.hpp"

#include <json.hpp>

#include "rolepred/errors.hpp"

namespace rolepred {

namespace wire {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse(const std::string& body, const char* what) {
    try {
        return ordered_json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

}  // namespace

std::string to_json(const InfillRequest& request) {
    ordered_json j;
    j["prompt"] = request.prompt;
    j["mask_token"] = request.mask_token;
    j["num_return"] = request.num_return;
    j["max_span_tokens"] = request.max_span_tokens;
    j["beams"] = request.beams;
    return j.dump();
}

std::string to_json(const InfillResponse& response) {
    ordered_json j;
    auto candidates = ordered_json::array();
    for (const auto& candidate : response.candidates) {
        candidates.push_back({{"text", candidate.text}, {"score", candidate.score}});
    }
    j["candidates"] = std::move(candidates);
    return j.dump();
}

std::string to_json(const QaRequest& request) {
    ordered_json j;
    j["question"] = request.question;
    j["context"] = request.context;
    return j.dump();
}

std::string to_json(const QaResponse& response) {
    ordered_json j;
    if (response.answer) {
        j["answer"] = *response.answer;
    } else {
        j["answer"] = nullptr;
    }
    if (response.start_char) {
        j["start_char"] = *response.start_char;
    } else {
        j["start_char"] = nullptr;
    }
    j["score"] = response.score;
    return j.dump();
}

std::string to_json(const EmbedRequest& request) {
    ordered_json j;
    j["texts"] = request.texts;
    return j.dump();
}

std::string to_json(const EmbedResponse& response) {
    ordered_json j;
    j["vectors"] = response.vectors;
    return j.dump();
}

InfillRequest infill_request_from_json(const std::string& body) {
    const auto j = parse(body, "infill request");
    try {
        InfillRequest request;
        request.prompt = j.at("prompt").get<std::string>();
        request.mask_token = j.at("mask_token").get<std::string>();
        request.num_return = j.at("num_return").get<int>();
        request.max_span_tokens = j.at("max_span_tokens").get<int>();
        request.beams = j.at("beams").get<int>();
        return request;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("infill request does not match schema: ") + e.what());
    }
}

InfillResponse infill_response_from_json(const std::string& body) {
    const auto j = parse(body, "infill response");
    try {
        InfillResponse response;
        for (const auto& candidate : j.at("candidates")) {
            response.candidates.push_back(
                {candidate.at("text").get<std::string>(), candidate.at("score").get<double>()});
        }
        return response;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("infill response does not match schema: ") + e.what());
    }
}

QaRequest qa_request_from_json(const std::string& body) {
    const auto j = parse(body, "qa request");
    try {
        return {j.at("question").get<std::string>(), j.at("context").get<std::string>()};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("qa request does not match schema: ") + e.what());
    }
}

QaResponse qa_response_from_json(const std::string& body) {
    const auto j = parse(body, "qa response");
    try {
        QaResponse response;
        if (j.contains("answer") && !j["answer"].is_null()) {
            response.answer = j["answer"].get<std::string>();
        }
        if (j.contains("start_char") && !j["start_char"].is_null()) {
            response.start_char = j["start_char"].get<int>();
        }
        response.score = j.at("score").get<double>();
        return response;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("qa response does not match schema: ") + e.what());
    }
}

EmbedRequest embed_request_from_json(const std::string& body) {
    const auto j = parse(body, "embed request");
    try {
        return {j.at("texts").get<std::vector<std::string>>()};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("embed request does not match schema: ") + e.what());
    }
}

EmbedResponse embed_response_from_json(const std::string& body) {
    const auto j = parse(body, "embed response");
    try {
        return {j.at("vectors").get<std::vector<std::vector<double>>>()};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("embed response does not match schema: ") + e.what());
    }
}

}  // namespace wire

void validate_response(const InfillRequest&, const InfillResponse& response) {
    for (const auto& candidate : response.candidates) {
        if (!(candidate.score > 0.0 && candidate.score <= 1.0)) {
            throw ValidationError("infill candidate score " + std::to_string(candidate.score) +
                                  " outside (0, 1]");
        }
    }
}

void validate_response(const QaRequest& request, const QaResponse& response) {
    if (!(response.score >= 0.0 && response.score <= 1.0)) {
        throw ValidationError("qa score " + std::to_string(response.score) + " outside [0, 1]");
    }
    if (response.answer && response.start_char) {
        const auto& answer = *response.answer;
        const int start = *response.start_char;
        if (start < 0 || start + answer.size() > request.context.size()) {
            throw ValidationError("qa answer span [" + std::to_string(start) + ", " +
                                  std::to_string(start + answer.size()) +
                                  ") is outside the document");
        }
    }
}

void validate_response(const EmbedRequest& request, const EmbedResponse& response) {
    if (response.vectors.size() != request.texts.size()) {
        throw ValidationError("embed response has " + std::to_string(response.vectors.size()) +
                              " vectors for " + std::to_string(request.texts.size()) + " texts");
    }
}

}  // namespace rolepred
