#include "rolepred/http_backend.hpp"

#include <httplib.h>

#include "rolepred/errors.hpp"

namespace rolepred {

namespace {

std::string post_json(const std::string& base_url, const std::string& path,
                      const std::string& body) {
    // A fresh client per request keeps concurrent fan-out safe.
    httplib::Client client(base_url);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(60, 0);

    auto result = client.Post(path, body, "application/json");
    if (!result) {
        throw TransportError("POST " + path + " to " + base_url +
                             " failed: " + httplib::to_string(result.error()));
    }
    if (result->status != 200) {
        throw TransportError("POST " + path + " to " + base_url + " returned status " +
                             std::to_string(result->status));
    }
    return result->body;
}

}  // namespace

HttpInfillBackend::HttpInfillBackend(std::string base_url) : base_url_(std::move(base_url)) {}

InfillResponse HttpInfillBackend::infill(const InfillRequest& request) {
    const std::string body = post_json(base_url_, "/v1/infill", wire::to_json(request));
    return wire::infill_response_from_json(body);
}

HttpQaBackend::HttpQaBackend(std::string base_url) : base_url_(std::move(base_url)) {}

QaResponse HttpQaBackend::answer(const QaRequest& request) {
    const std::string body = post_json(base_url_, "/v1/qa", wire::to_json(request));
    return wire::qa_response_from_json(body);
}

HttpEmbedBackend::HttpEmbedBackend(std::string base_url) : base_url_(std::move(base_url)) {}

EmbedResponse HttpEmbedBackend::embed(const EmbedRequest& request) {
    const std::string body = post_json(base_url_, "/v1/embed", wire::to_json(request));
    return wire::embed_response_from_json(body);
}

}  // namespace rolepred
