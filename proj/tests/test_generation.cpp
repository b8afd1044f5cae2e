#include <doctest.h>

#include <algorithm>
#include <random>

#include "rolepred/errors.hpp"
#include "rolepred/generation.hpp"
#include "rolepred/mock_backend.hpp"
#include "support/fixtures.hpp"

using namespace rolepred;

namespace {

/// Scripted infill backend keyed on the parsed entity surface.
class ScriptedInfill : public InfillBackend {
  public:
    std::map<std::string, std::vector<InfillCandidate>> responses;

    InfillResponse infill(const InfillRequest& request) override {
        auto entity = parse_prompt_entity(request.prompt, request.mask_token);
        ++calls;
        auto it = responses.find(entity.surface);
        if (it == responses.end()) return {};
        return {it->second};
    }

    int calls = 0;
};

EntityMention number_mention(std::string text, int sentence = 0, int start = 0) {
    EntityMention m;
    m.text = std::move(text);
    m.sentence_index = sentence;
    m.start_char = start;
    m.paragraph_index = 0;
    m.category = EntityCategory::number;
    m.raw_label = "CARDINAL";
    return m;
}

}  // namespace

TEST_CASE("normalize_role applies the full normalization chain") {
    CHECK(normalize_role("The Magnitude.") == "magnitude");
    CHECK(normalize_role("start   TIME") == "start time");
    CHECK(normalize_role("a") == "");
    CHECK(normalize_role("an" ) == "");
    CHECK(normalize_role("the") == "");
    CHECK(normalize_role("  depth  ") == "depth");
    CHECK(normalize_role("\"official date\"") == "official date");
    CHECK(normalize_role("the the magnitude") == "magnitude");
    CHECK(normalize_role("") == "");
    CHECK(normalize_role("...") == "");
}

TEST_CASE("normalize_role is idempotent") {
    std::mt19937 rng(11);
    const std::string alphabet = "abc THEan.,!  ";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> length(0, 24);
    for (int i = 0; i < 2000; ++i) {
        std::string raw;
        const int len = length(rng);
        for (int c = 0; c < len; ++c) raw += alphabet[pick(rng)];
        const std::string once = normalize_role(raw);
        CHECK(normalize_role(once) == once);
    }
}

TEST_CASE("generate_for_document normalizes, deduplicates, and caps candidates") {
    auto doc = fixtures::make_document("d1", {"The time was 9.", "b.", "c.", "d."});
    ScriptedInfill backend;
    backend.responses["9"] = {{"time", 0.9}, {"start time", 0.7}, {"Time", 0.8}};

    GenerationConfig config;
    auto entities = std::vector<EntityMention>{number_mention("9", 0, 13)};
    auto result = generate_for_document(doc, entities, "fire", config, backend);

    REQUIRE(result.entities.size() == 1);
    const auto& candidates = result.entities[0].candidates;
    REQUIRE(candidates.size() == 2);
    CHECK(candidates[0] == RoleScore{"time", 0.9});  // max of 0.9 and 0.8
    CHECK(candidates[1] == RoleScore{"start time", 0.7});
}

TEST_CASE("generate_for_document drops over-length roles") {
    auto doc = fixtures::make_document("d1", {"The count is 9.", "b.", "c.", "d."});
    ScriptedInfill backend;
    backend.responses["9"] = {{"one two three four", 0.9}, {"one two three", 0.8}};

    GenerationConfig config;  // max_span_tokens = 3
    auto entities = std::vector<EntityMention>{number_mention("9", 0, 13)};
    auto result = generate_for_document(doc, entities, "fire", config, backend);
    REQUIRE(result.entities.size() == 1);
    REQUIRE(result.entities[0].candidates.size() == 1);
    CHECK(result.entities[0].candidates[0].name == "one two three");
}

TEST_CASE("generate_for_document prompts each distinct surface once") {
    auto doc = fixtures::make_document("d1", {"9 then 9.", "again 9.", "c.", "d."});
    ScriptedInfill backend;
    backend.responses["9"] = {{"count", 0.9}};

    auto entities = std::vector<EntityMention>{
        number_mention("9", 0, 0), number_mention("9", 0, 7), number_mention("9", 1, 6)};
    auto result = generate_for_document(doc, entities, "fire", GenerationConfig{}, backend);
    CHECK(backend.calls == 1);
    REQUIRE(result.entities.size() == 1);
    CHECK(result.entities[0].entity.start_char == 0);  // first mention wins
}

TEST_CASE("generate_for_document enforces num_return") {
    auto doc = fixtures::make_document("d1", {"The count is 9.", "b.", "c.", "d."});
    ScriptedInfill backend;
    backend.responses["9"] = {{"r1", 0.9}, {"r2", 0.8}, {"r3", 0.7}};

    GenerationConfig config;
    config.num_return = 2;
    config.beams = 2;
    auto entities = std::vector<EntityMention>{number_mention("9", 0, 13)};
    auto result = generate_for_document(doc, entities, "fire", config, backend);
    REQUIRE(result.entities.size() == 1);
    CHECK(result.entities[0].candidates.size() == 2);
}

TEST_CASE("generation config invariants") {
    GenerationConfig config;
    config.num_return = 0;
    CHECK_THROWS_AS(config.validate(), ValidationError);
    config = {};
    config.max_span_tokens = 6;
    CHECK_THROWS_AS(config.validate(), ValidationError);
    config = {};
    config.beams = 5;  // below num_return
    CHECK_THROWS_AS(config.validate(), ValidationError);
    CHECK_NOTHROW(GenerationConfig{}.validate());
}

TEST_CASE("compute_importance multiplies coverage by mean score") {
    CandidateRole role;
    role.name = "magnitude";
    role.doc_ids = {"a", "b", "c", "d", "e"};
    role.scores = {0.8, 0.8, 0.8, 0.8, 0.8};
    CHECK(compute_importance(role, 10) == doctest::Approx(0.4).epsilon(1e-12));

    role.doc_ids = {"a"};
    role.scores = {1.0};
    CHECK(compute_importance(role, 1) == doctest::Approx(1.0));

    role.doc_ids.clear();
    CHECK_THROWS_AS(compute_importance(role, 10), ValidationError);
}

TEST_CASE("aggregate_candidates unions by name across documents") {
    Corpus corpus;
    corpus.event_type = "earthquake";
    for (auto id : {"d1", "d2"}) {
        corpus.documents.push_back(fixtures::make_document(id, {"a.", "b.", "c.", "d."}));
    }

    std::vector<DocumentCandidates> per_doc(2);
    per_doc[0].document_id = "d1";
    per_doc[0].entities.push_back({EntityMention{}, {{"time", 0.9}, {"magnitude", 0.8}}});
    per_doc[1].document_id = "d2";
    per_doc[1].entities.push_back({EntityMention{}, {{"time", 0.7}}});

    auto candidates = aggregate_candidates(per_doc, corpus);
    REQUIRE(candidates.size() == 2);
    CHECK(candidates[0].name == "time");
    CHECK(candidates[0].doc_ids == std::set<std::string>{"d1", "d2"});
    CHECK(candidates[0].scores == std::vector<double>{0.7, 0.9});
    CHECK(candidates[0].importance == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(candidates[1].name == "magnitude");
    CHECK(candidates[1].doc_ids.size() == 1);
    CHECK(candidates[1].importance == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("aggregate_candidates on empty results") {
    Corpus corpus;
    corpus.event_type = "earthquake";
    corpus.documents.push_back(fixtures::make_document("d1", {"a.", "b.", "c.", "d."}));
    CHECK(aggregate_candidates({}, corpus).empty());
}

TEST_CASE("full-coverage role at score 0.9 ranks first with importance 0.9") {
    Corpus corpus;
    corpus.event_type = "earthquake";
    std::vector<DocumentCandidates> per_doc;
    for (int i = 0; i < 10; ++i) {
        std::string id = "d" + std::to_string(i);
        corpus.documents.push_back(fixtures::make_document(id, {"a.", "b.", "c.", "d."}));
        DocumentCandidates doc_result;
        doc_result.document_id = id;
        doc_result.entities.push_back({EntityMention{}, {{"magnitude", 0.9}}});
        if (i < 3) {
            doc_result.entities.push_back({EntityMention{}, {{"tsunami", 0.95}}});
        }
        per_doc.push_back(std::move(doc_result));
    }
    auto candidates = aggregate_candidates(per_doc, corpus);
    REQUIRE(candidates.size() == 2);
    CHECK(candidates[0].name == "magnitude");
    CHECK(candidates[0].importance == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("aggregation is order-independent under document permutation") {
    Corpus corpus;
    corpus.event_type = "earthquake";
    std::vector<DocumentCandidates> per_doc;
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> score(0.1, 1.0);
    const std::vector<std::string> roles = {"time", "magnitude", "depth", "deaths"};
    for (int i = 0; i < 8; ++i) {
        std::string id = "d" + std::to_string(i);
        corpus.documents.push_back(fixtures::make_document(id, {"a.", "b.", "c.", "d."}));
        DocumentCandidates doc_result;
        doc_result.document_id = id;
        for (int e = 0; e < 3; ++e) {
            EntityCandidates entity;
            for (const auto& role : roles) {
                if (std::uniform_int_distribution<int>(0, 1)(rng)) {
                    entity.candidates.push_back({role, score(rng)});
                }
            }
            doc_result.entities.push_back(std::move(entity));
        }
        per_doc.push_back(std::move(doc_result));
    }

    const auto baseline = aggregate_candidates(per_doc, corpus);
    for (int round = 0; round < 100; ++round) {
        auto shuffled = per_doc;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (auto& doc_result : shuffled) {
            std::shuffle(doc_result.entities.begin(), doc_result.entities.end(), rng);
        }
        CHECK(aggregate_candidates(shuffled, corpus) == baseline);
    }
}
