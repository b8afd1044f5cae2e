#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rolepred/prompting.hpp"

namespace rolepred {

// POST /v1/infill
struct InfillRequest {
    std::string prompt;
    std::string mask_token = std::string(kMaskToken);
    int num_return = 10;
    int max_span_tokens = 3;
    int beams = 200;
};

struct InfillCandidate {
    std::string text;
    double score = 0.0;  // in (0, 1]

    bool operator==(const InfillCandidate&) const = default;
};

struct InfillResponse {
    std::vector<InfillCandidate> candidates;
};

// POST /v1/qa
struct QaRequest {
    std::string question;
    std::string context;
};

struct QaResponse {
    std::optional<std::string> answer;    // null when unanswerable
    std::optional<int> start_char;
    double score = 0.0;  // in [0, 1]
};

// POST /v1/embed
struct EmbedRequest {
    std::vector<std::string> texts;
};

struct EmbedResponse {
    std::vector<std::vector<double>> vectors;  // row-aligned with texts
};

class InfillBackend {
  public:
    virtual ~InfillBackend() = default;
    virtual InfillResponse infill(const InfillRequest& request) = 0;
};

class QaBackend {
  public:
    virtual ~QaBackend() = default;
    virtual QaResponse answer(const QaRequest& request) = 0;
};

class EmbedBackend {
  public:
    virtual ~EmbedBackend() = default;
    virtual EmbedResponse embed(const EmbedRequest& request) = 0;
};

/// Wire (de)serialization for the three endpoints. Both the HTTP client
/// and test servers go through these, so the schema lives in one place.
namespace wire {

std::string to_json(const InfillRequest& request);
std::string to_json(const InfillResponse& response);
std::string to_json(const QaRequest& request);
std::string to_json(const QaResponse& response);
std::string to_json(const EmbedRequest& request);
std::string to_json(const EmbedResponse& response);

InfillRequest infill_request_from_json(const std::string& body);
InfillResponse infill_response_from_json(const std::string& body);
QaRequest qa_request_from_json(const std::string& body);
QaResponse qa_response_from_json(const std::string& body);
EmbedRequest embed_request_from_json(const std::string& body);
EmbedResponse embed_response_from_json(const std::string& body);

}  // namespace wire

/// Schema checks applied to every response regardless of backend kind.
/// Throw ValidationError on range or shape violations.
void validate_response(const InfillRequest& request, const InfillResponse& response);
void validate_response(const QaRequest& request, const QaResponse& response);
void validate_response(const EmbedRequest& request, const EmbedResponse& response);

}  // namespace rolepred
