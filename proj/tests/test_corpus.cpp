#include <doctest.h>

#include "rolepred/corpus.hpp"
#include "rolepred/errors.hpp"
#include "support/fixtures.hpp"

using namespace rolepred;

namespace {

std::string two_doc_corpus_json() {
    return R"({
      "event_type": "earthquake",
      "documents": [
        {"id": "a", "title": "A", "sentences": ["s one.", "s two.", "s three.", "s four."],
         "paragraphs": [[0, 3]]},
        {"id": "b", "title": "B", "sentences": ["t one.", "t two.", "t three.", "t four.", "t five."],
         "paragraphs": [[0, 1], [2, 4]]}
      ]
    })";
}

}  // namespace

TEST_CASE("load_corpus accepts a well-formed two-document file") {
    fixtures::TempDir dir;
    auto path = dir.write("corpus.json", two_doc_corpus_json());
    Corpus corpus = load_corpus(path);
    CHECK(corpus.documents.size() == 2);
    CHECK(corpus.event_type == "earthquake");
    CHECK(corpus.documents[1].paragraph_of(3) == 1);
}

TEST_CASE("load_corpus rejects a three-sentence document") {
    fixtures::TempDir dir;
    auto path = dir.write("corpus.json", R"({
      "event_type": "fire",
      "documents": [
        {"id": "a", "title": "A", "sentences": ["one.", "two.", "three."], "paragraphs": [[0, 2]]}
      ]
    })");
    CHECK_THROWS_WITH_AS(load_corpus(path), doctest::Contains("3 sentences"), ValidationError);
}

TEST_CASE("load_corpus rejects duplicate document ids") {
    fixtures::TempDir dir;
    auto path = dir.write("corpus.json", R"({
      "event_type": "fire",
      "documents": [
        {"id": "a", "title": "A", "sentences": ["1.", "2.", "3.", "4."], "paragraphs": [[0, 3]]},
        {"id": "a", "title": "A2", "sentences": ["1.", "2.", "3.", "4."], "paragraphs": [[0, 3]]}
      ]
    })");
    CHECK_THROWS_WITH_AS(load_corpus(path), doctest::Contains("duplicate document id"),
                         ValidationError);
}

TEST_CASE("load_corpus rejects malformed JSON") {
    fixtures::TempDir dir;
    auto path = dir.write("corpus.json", "{not json");
    CHECK_THROWS_AS(load_corpus(path), ParseError);
}

TEST_CASE("validate_corpus rejects broken paragraph covers") {
    Corpus corpus;
    corpus.event_type = "fire";
    corpus.documents.push_back(
        fixtures::make_document("a", {"1.", "2.", "3.", "4."}, {{0, 1}, {3, 3}}));
    CHECK_THROWS_AS(validate_corpus(corpus), ValidationError);

    corpus.documents[0].paragraphs = {{0, 1}, {1, 3}};
    CHECK_THROWS_AS(validate_corpus(corpus), ValidationError);

    corpus.documents[0].paragraphs = {{0, 1}, {2, 2}};
    CHECK_THROWS_AS(validate_corpus(corpus), ValidationError);
}

TEST_CASE("validate_corpus enforces gold invariants") {
    Corpus corpus;
    corpus.event_type = "fire";
    corpus.documents.push_back(fixtures::make_document("a", {"1.", "2.", "3.", "4."}));

    SUBCASE("unknown document id in arguments") {
        GoldAnnotation gold;
        gold.role_groups = {{"cause"}};
        gold.arguments["zz"]["cause"] = {"arson"};
        corpus.gold = gold;
        CHECK_THROWS_WITH_AS(validate_corpus(corpus), doctest::Contains("unknown document"),
                             ValidationError);
    }
    SUBCASE("canonical role missing from the role groups") {
        GoldAnnotation gold;
        gold.role_groups = {{"cause"}};
        gold.arguments["a"]["damage"] = {"severe"};
        corpus.gold = gold;
        CHECK_THROWS_WITH_AS(validate_corpus(corpus), doctest::Contains("0 role groups"),
                             ValidationError);
    }
    SUBCASE("canonical role in two role groups") {
        GoldAnnotation gold;
        gold.role_groups = {{"cause"}, {"cause", "reason"}};
        gold.arguments["a"]["cause"] = {"arson"};
        corpus.gold = gold;
        CHECK_THROWS_WITH_AS(validate_corpus(corpus), doctest::Contains("2 role groups"),
                             ValidationError);
    }
    SUBCASE("empty argument string") {
        GoldAnnotation gold;
        gold.role_groups = {{"cause"}};
        gold.arguments["a"]["cause"] = {""};
        corpus.gold = gold;
        CHECK_THROWS_AS(validate_corpus(corpus), ValidationError);
    }
}

TEST_CASE("corpus save/load round-trips") {
    fixtures::TempDir dir;
    Corpus corpus = fixtures::planted_corpus();
    auto path = dir.path() / "roundtrip.json";
    save_corpus(corpus, path);
    Corpus reloaded = load_corpus(path);
    CHECK(reloaded == corpus);
}

TEST_CASE("arg_scatter counts distinct first-mention sentences") {
    auto doc = fixtures::make_document(
        "a", {"The fire began near the old mill.", "It spread to Main Street by nightfall.",
              "Crews contained it two days later.", "Damage reached 3 million dollars."});

    SUBCASE("arguments in three different sentences") {
        std::map<std::string, std::vector<std::string>> gold = {
            {"origin", {"old mill"}},
            {"location", {"Main Street"}},
            {"damage", {"3 million"}},
        };
        CHECK(arg_scatter(doc, gold) == 3);
    }
    SUBCASE("all arguments in one sentence") {
        std::map<std::string, std::vector<std::string>> gold = {
            {"origin", {"fire"}},
            {"place", {"mill"}},
        };
        CHECK(arg_scatter(doc, gold) == 1);
    }
    SUBCASE("no argument found") {
        std::map<std::string, std::vector<std::string>> gold = {{"cause", {"lightning"}}};
        CHECK(arg_scatter(doc, gold) == 0);
    }
    SUBCASE("matching is case-insensitive") {
        std::map<std::string, std::vector<std::string>> gold = {{"location", {"MAIN STREET"}}};
        CHECK(arg_scatter(doc, gold) == 1);
    }
    SUBCASE("bounded by sentences and arguments") {
        std::map<std::string, std::vector<std::string>> gold = {
            {"r1", {"the"}}, {"r2", {"it"}}, {"r3", {"mill"}}, {"r4", {"street"}},
            {"r5", {"later"}}, {"r6", {"dollars"}},
        };
        int scatter = arg_scatter(doc, gold);
        CHECK(scatter <= 4);
        CHECK(scatter <= 6);
    }
}

TEST_CASE("corpus_stats aggregates the planted corpus") {
    Corpus corpus = fixtures::planted_corpus();
    CorpusStats stats = corpus_stats(corpus);
    CHECK(stats.num_documents == 10);
    CHECK(stats.num_roles == 2);
    CHECK(stats.num_arguments == 16);  // 10 magnitude + 6 date
    // d01..d06 scatter over sentences {1,2,3}; d07..d10 only sentence 1.
    CHECK(stats.mean_arg_scatter == doctest::Approx(2.2).epsilon(1e-12));
    CHECK(stats.mean_roles_per_event == doctest::Approx(2.0));
}

TEST_CASE("corpus_stats requires gold") {
    Corpus corpus = fixtures::planted_corpus();
    corpus.gold.reset();
    CHECK_THROWS_AS(corpus_stats(corpus), ValidationError);
}

TEST_CASE("corpus_stats with empty gold arguments") {
    Corpus corpus = fixtures::planted_corpus();
    corpus.gold->arguments.clear();
    CorpusStats stats = corpus_stats(corpus);
    CHECK(stats.num_arguments == 0);
    CHECK(stats.mean_arg_scatter == 0.0);
}

TEST_CASE("leakage_overlap flags shared long sentences only") {
    Corpus corpus;
    corpus.event_type = "fire";
    corpus.documents.push_back(fixtures::make_document(
        "long", {"The quick brown fox jumped today.", "Filler one.", "Filler two.", "Filler three."}));
    corpus.documents.push_back(fixtures::make_document(
        "short", {"It happened today.", "Filler one.", "Filler two.", "Filler three."}));

    SUBCASE("six shared words flag the document") {
        std::set<std::string> reference = {"the quick brown fox jumped today"};
        CHECK(leakage_overlap(corpus, reference) == std::vector<std::string>{"long"});
    }
    SUBCASE("three shared words stay below the threshold") {
        std::set<std::string> reference = {"it happened today"};
        CHECK(leakage_overlap(corpus, reference).empty());
    }
    SUBCASE("empty reference set") {
        CHECK(leakage_overlap(corpus, {}).empty());
    }
    SUBCASE("normalization bridges case, spacing, and terminal punctuation") {
        std::set<std::string> reference = {"  The   QUICK brown fox jumped today!! "};
        CHECK(leakage_overlap(corpus, reference) == std::vector<std::string>{"long"});
    }
    SUBCASE("adding reference sentences never unflags") {
        std::set<std::string> small = {"the quick brown fox jumped today"};
        std::set<std::string> large = small;
        large.insert("it happened today");
        large.insert("completely unrelated sentence entirely different words");
        auto flagged_small = leakage_overlap(corpus, small);
        auto flagged_large = leakage_overlap(corpus, large);
        for (const auto& id : flagged_small) {
            CHECK(std::find(flagged_large.begin(), flagged_large.end(), id) != flagged_large.end());
        }
    }
}

TEST_CASE("leakage word counting treats exactly five words as over the threshold") {
    Corpus corpus;
    corpus.event_type = "fire";
    corpus.documents.push_back(fixtures::make_document(
        "five", {"one two three four five.", "Filler.", "Filler.", "Filler."}));
    corpus.documents.push_back(fixtures::make_document(
        "four", {"one two three four.", "Filler.", "Filler.", "Filler."}));
    std::set<std::string> reference = {"one two three four five", "one two three four"};
    CHECK(leakage_overlap(corpus, reference) == std::vector<std::string>{"five"});
}
