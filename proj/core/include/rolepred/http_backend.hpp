#pragma once

#include <string>

#include "rolepred/backend.hpp"

namespace rolepred {

/// Clients for the /v1/infill, /v1/qa, /v1/embed endpoints. Connection
/// failures and non-200 statuses raise TransportError.
class HttpInfillBackend : public InfillBackend {
  public:
    explicit HttpInfillBackend(std::string base_url);

    InfillResponse infill(const InfillRequest& request) override;

  private:
    std::string base_url_;
};

class HttpQaBackend : public QaBackend {
  public:
    explicit HttpQaBackend(std::string base_url);

    QaResponse answer(const QaRequest& request) override;

  private:
    std::string base_url_;
};

class HttpEmbedBackend : public EmbedBackend {
  public:
    explicit HttpEmbedBackend(std::string base_url);

    EmbedResponse embed(const EmbedRequest& request) override;

  private:
    std::string base_url_;
};

}  // namespace rolepred
