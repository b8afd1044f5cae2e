#include "rolepred/extraction.hpp"

#include "rolepred/errors.hpp"

namespace rolepred {

void ExtractionConfig::validate() const {
    if (qa_threshold < 0.0 || qa_threshold > 1.0) {
        throw ValidationError("qa_threshold must be in [0, 1]");
    }
}

std::string build_question(std::string_view role, std::string_view event_type) {
    if (role.empty() || event_type.empty()) {
        throw ValidationError("build_question requires non-empty role and event type");
    }
    std::string question = "What is the ";
    question += role;
    question += " in this ";
    question += event_type;
    question += " event?";
    return question;
}

std::optional<ExtractedArgument> extract_argument(std::string_view role, const Document& document,
                                                  std::string_view event_type,
                                                  const ExtractionConfig& config,
                                                  QaBackend& backend) {
    config.validate();

    QaRequest request;
    request.question = build_question(role, event_type);
    request.context = document.full_text();

    QaResponse response = backend.answer(request);
    validate_response(request, response);

    if (!response.answer) return std::nullopt;
    if (response.score < config.qa_threshold) return std::nullopt;
    return ExtractedArgument{*response.answer, response.score};
}

EventInstance extract_event_instance(const Document& document, std::span<const std::string> roles,
                                     std::string_view event_type, const ExtractionConfig& config,
                                     QaBackend& backend) {
    if (roles.empty()) throw ValidationError("extract_event_instance requires at least one role");

    EventInstance instance;
    instance.document_id = document.id;
    for (const auto& role : roles) {
        if (auto argument = extract_argument(role, document, event_type, config, backend)) {
            instance.arguments.emplace(role, std::move(*argument));
        }
    }
    return instance;
}

}  // namespace rolepred
