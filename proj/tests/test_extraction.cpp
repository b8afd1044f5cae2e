#include <doctest.h>

#include "rolepred/errors.hpp"
#include "rolepred/extraction.hpp"
#include "rolepred/mock_backend.hpp"
#include "support/fixtures.hpp"

using namespace rolepred;

namespace {

/// QA backend scripted by question with fixed answers and scores.
class ScriptedQa : public QaBackend {
  public:
    std::map<std::string, ExtractedArgument> by_question;
    std::optional<int> force_offset;

    QaResponse answer(const QaRequest& request) override {
        auto it = by_question.find(request.question);
        if (it == by_question.end()) return {};
        QaResponse response;
        response.answer = it->second.text;
        response.score = it->second.score;
        if (force_offset) {
            response.start_char = force_offset;
        } else if (auto pos = request.context.find(it->second.text); pos != std::string::npos) {
            response.start_char = static_cast<int>(pos);
        }
        return response;
    }
};

}  // namespace

TEST_CASE("build_question renders the QA template") {
    CHECK(build_question("casualty", "pandemic") == "What is the casualty in this pandemic event?");
    CHECK(build_question("magnitude", "earthquake") ==
          "What is the magnitude in this earthquake event?");
    CHECK(build_question("start time", "blizzard") ==
          "What is the start time in this blizzard event?");
    CHECK_THROWS_AS(build_question("", "fire"), ValidationError);
    CHECK_THROWS_AS(build_question("cause", ""), ValidationError);
}

TEST_CASE("extract_argument keeps confident answers") {
    auto doc = fixtures::make_document(
        "covid", {"The COVID-19 pandemic is an ongoing global pandemic.",
                  "It's estimated that the worldwide total number of deaths has exceeded five "
                  "million.",
                  "Vaccination campaigns continue.", "Restrictions vary by country."});
    ScriptedQa backend;
    backend.by_question["What is the casualty in this pandemic event?"] = {"five million", 0.9};

    auto argument = extract_argument("casualty", doc, "pandemic", ExtractionConfig{}, backend);
    REQUIRE(argument.has_value());
    CHECK(argument->text == "five million");
    CHECK(argument->score == 0.9);
}

TEST_CASE("extract_argument applies the threshold strictly below") {
    auto doc = fixtures::make_document("a", {"alpha beta.", "b.", "c.", "d."});
    ScriptedQa backend;

    SUBCASE("score below the threshold is discarded") {
        backend.by_question["What is the cause in this fire event?"] = {"alpha", 0.25};
        CHECK_FALSE(extract_argument("cause", doc, "fire", ExtractionConfig{}, backend));
    }
    SUBCASE("score exactly at the threshold is retained") {
        backend.by_question["What is the cause in this fire event?"] = {"alpha", 0.3};
        CHECK(extract_argument("cause", doc, "fire", ExtractionConfig{}, backend));
    }
    SUBCASE("0.299 is discarded") {
        backend.by_question["What is the cause in this fire event?"] = {"alpha", 0.299};
        CHECK_FALSE(extract_argument("cause", doc, "fire", ExtractionConfig{}, backend));
    }
    SUBCASE("unanswerable stays absent") {
        CHECK_FALSE(extract_argument("cause", doc, "fire", ExtractionConfig{}, backend));
    }
}

TEST_CASE("extract_argument validates span offsets") {
    auto doc = fixtures::make_document("a", {"alpha beta.", "b.", "c.", "d."});
    ScriptedQa backend;
    backend.by_question["What is the cause in this fire event?"] = {"alpha", 0.9};
    backend.force_offset = 900;
    CHECK_THROWS_AS(extract_argument("cause", doc, "fire", ExtractionConfig{}, backend),
                    ValidationError);
}

TEST_CASE("extract_argument raises the threshold monotonically") {
    auto doc = fixtures::make_document("a", {"alpha beta.", "b.", "c.", "d."});
    ScriptedQa backend;
    backend.by_question["What is the cause in this fire event?"] = {"alpha", 0.5};

    ExtractionConfig low{0.3};
    ExtractionConfig high{0.7};
    CHECK(extract_argument("cause", doc, "fire", low, backend).has_value());
    CHECK_FALSE(extract_argument("cause", doc, "fire", high, backend).has_value());
}

TEST_CASE("extract_event_instance collects per-role answers independently") {
    auto doc = fixtures::make_document(
        "d1", {"The quake measured 5.8 on the scale.", "No tsunami followed.", "c.", "d."});
    ScriptedQa backend;
    backend.by_question["What is the magnitude in this earthquake event?"] = {"5.8", 0.9};

    std::vector<std::string> roles = {"magnitude", "tsunami"};
    auto instance = extract_event_instance(doc, roles, "earthquake", ExtractionConfig{}, backend);
    CHECK(instance.document_id == "d1");
    REQUIRE(instance.arguments.size() == 1);
    CHECK(instance.arguments.at("magnitude").text == "5.8");

    // The union of independent extract_argument calls matches the instance.
    for (const auto& role : roles) {
        auto single = extract_argument(role, doc, "earthquake", ExtractionConfig{}, backend);
        CHECK(single.has_value() == (instance.arguments.count(role) == 1));
    }
}

TEST_CASE("extract_event_instance with all roles unanswerable") {
    auto doc = fixtures::make_document("d1", {"a.", "b.", "c.", "d."});
    ScriptedQa backend;
    std::vector<std::string> roles = {"x", "y"};
    auto instance = extract_event_instance(doc, roles, "fire", ExtractionConfig{}, backend);
    CHECK(instance.arguments.empty());
}

TEST_CASE("extract_event_instance requires roles") {
    auto doc = fixtures::make_document("d1", {"a.", "b.", "c.", "d."});
    ScriptedQa backend;
    CHECK_THROWS_AS(extract_event_instance(doc, {}, "fire", ExtractionConfig{}, backend),
                    ValidationError);
}

TEST_CASE("the planted fixture table extracts exactly") {
    Corpus corpus = fixtures::planted_corpus();
    auto mock_fixtures = MockFixtures::from_json_text(fixtures::planted_fixture_json(), corpus);
    MockQaBackend backend(mock_fixtures, corpus);

    std::vector<std::string> roles = {"magnitude", "date", "official date", "tsunami"};
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
        const auto& doc = corpus.documents[i];
        const auto& spec = fixtures::planted_docs()[i];
        auto instance =
            extract_event_instance(doc, roles, corpus.event_type, ExtractionConfig{}, backend);
        CHECK(instance.arguments.at("magnitude").text == spec.magnitude);
        CHECK(instance.arguments.count("date") == (spec.date_text.empty() ? 0u : 1u));
        CHECK(instance.arguments.count("official date") == (spec.date_text.empty() ? 0u : 1u));
        CHECK(instance.arguments.count("tsunami") == (spec.tsunami ? 1u : 0u));
        if (!spec.date_text.empty()) {
            CHECK(instance.arguments.at("date").text == spec.date_text);
            CHECK(instance.arguments.at("official date").text == spec.date_iso);
        }
    }
}
