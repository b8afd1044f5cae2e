#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "rolepred/backend.hpp"
#include "rolepred/corpus.hpp"

namespace rolepred {

struct ExtractionConfig {
    double qa_threshold = 0.3;  // strictly-below is discarded

    void validate() const;
};

std::string build_question(std::string_view role, std::string_view event_type);

struct ExtractedArgument {
    std::string text;
    double score = 0.0;

    bool operator==(const ExtractedArgument&) const = default;
};

/// Asks the QA backend over the full document text. Returns the span only
/// when answerable with score >= qa_threshold.
std::optional<ExtractedArgument> extract_argument(std::string_view role, const Document& document,
                                                  std::string_view event_type,
                                                  const ExtractionConfig& config,
                                                  QaBackend& backend);

/// The event extracted from one document: at most one argument per role.
struct EventInstance {
    std::string document_id;
    std::map<std::string, ExtractedArgument> arguments;

    bool operator==(const EventInstance&) const = default;
};

EventInstance extract_event_instance(const Document& document, std::span<const std::string> roles,
                                     std::string_view event_type, const ExtractionConfig& config,
                                     QaBackend& backend);

}  // namespace rolepred
