#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "rolepred/corpus.hpp"

namespace fixtures {

inline rolepred::Document make_document(std::string id, std::vector<std::string> sentences,
                                        std::vector<std::pair<int, int>> paragraphs = {}) {
    rolepred::Document doc;
    doc.id = std::move(id);
    doc.title = doc.id;
    doc.sentences = std::move(sentences);
    if (paragraphs.empty()) {
        doc.paragraphs = {{0, static_cast<int>(doc.sentences.size()) - 1}};
    } else {
        doc.paragraphs = std::move(paragraphs);
    }
    return doc;
}

struct PlantedDoc {
    std::string id;
    std::string magnitude;
    std::string date_text;  // empty when the document carries no date
    std::string date_iso;
    bool tsunami = false;
};

inline const std::vector<PlantedDoc>& planted_docs() {
    static const std::vector<PlantedDoc> docs = {
        {"d01", "5.8", "March 27, 1964", "1964-03-27", false},
        {"d02", "7.2", "July 4, 1976", "1976-07-04", false},
        {"d03", "6.3", "May 22, 1960", "1960-05-22", false},
        {"d04", "5.1", "January 17, 1995", "1995-01-17", false},
        {"d05", "6.9", "September 19, 1985", "1985-09-19", false},
        {"d06", "7.5", "December 26, 2004", "2004-12-26", false},
        {"d07", "5.4", "", "", false},
        {"d08", "6.1", "", "", false},
        {"d09", "7.9", "", "", true},
        {"d10", "5.6", "", "", true},
    };
    return docs;
}

/// Ten-document earthquake corpus with three planted roles: magnitude in
/// every document, a date/official-date alias pair agreeing in six, and a
/// tsunami signal in two.
inline rolepred::Corpus planted_corpus() {
    rolepred::Corpus corpus;
    corpus.event_type = "earthquake";

    for (const auto& spec : planted_docs()) {
        std::vector<std::string> sentences;
        sentences.push_back("A powerful earthquake struck the region late in the afternoon of " +
                            spec.id + ".");
        sentences.push_back("The quake measured " + spec.magnitude + " on the Richter scale.");
        if (!spec.date_text.empty()) {
            sentences.push_back("It struck on " + spec.date_text + ".");
            sentences.push_back("The official record lists " + spec.date_iso +
                                " as the starting day.");
        } else if (spec.tsunami) {
            sentences.push_back("Waves reached 10 meters along the shoreline.");
            sentences.push_back("Thousands of residents moved to higher ground.");
        } else {
            sentences.push_back("Aid arrived quickly.");
            sentences.push_back("Recovery work continued for several weeks afterwards.");
        }
        corpus.documents.push_back(
            make_document(spec.id, std::move(sentences), {{0, 1}, {2, 3}}));
    }

    rolepred::GoldAnnotation gold;
    gold.role_groups = {{"magnitude"}, {"date", "official date"}};
    for (const auto& spec : planted_docs()) {
        gold.arguments[spec.id]["magnitude"] = {spec.magnitude};
        if (!spec.date_text.empty()) {
            gold.arguments[spec.id]["date"] = {spec.date_text, spec.date_iso};
        }
    }
    corpus.gold = std::move(gold);
    return corpus;
}

/// Mock fixture JSON matching planted_corpus().
inline std::string planted_fixture_json() {
    std::string infill;
    std::string qa_magnitude;
    std::string qa_date;
    std::string qa_official;
    std::string qa_tsunami;

    for (const auto& spec : planted_docs()) {
        if (!infill.empty()) infill += ",";
        infill += "\"" + spec.magnitude + "\": [{\"text\": \"magnitude\", \"score\": 0.9}]";
        if (!spec.date_text.empty()) {
            infill += ",\"" + spec.date_text +
                      "\": [{\"text\": \"date\", \"score\": 0.8},"
                      " {\"text\": \"official date\", \"score\": 0.7}]";
        }

        if (!qa_magnitude.empty()) qa_magnitude += ",";
        qa_magnitude += "\"" + spec.id + "\": {\"answer\": \"" + spec.magnitude +
                        "\", \"score\": 0.9}";
        if (!spec.date_text.empty()) {
            if (!qa_date.empty()) qa_date += ",";
            qa_date += "\"" + spec.id + "\": {\"answer\": \"" + spec.date_text +
                       "\", \"score\": 0.85}";
            if (!qa_official.empty()) qa_official += ",";
            qa_official += "\"" + spec.id + "\": {\"answer\": \"" + spec.date_iso +
                           "\", \"score\": 0.8}";
        }
        if (spec.tsunami) {
            if (!qa_tsunami.empty()) qa_tsunami += ",";
            qa_tsunami += "\"" + spec.id + "\": {\"answer\": \"10\", \"score\": 0.8}";
        }
    }
    infill += ",\"10\": [{\"text\": \"tsunami\", \"score\": 0.6}]";

    return "{\"infill\": {" + infill + "}, \"qa\": {\"magnitude\": {" + qa_magnitude +
           "}, \"date\": {" + qa_date + "}, \"official date\": {" + qa_official +
           "}, \"tsunami\": {" + qa_tsunami + "}}}";
}

/// Fresh scratch directory under the system temp dir.
class TempDir {
  public:
    TempDir() {
        static std::mt19937_64 rng{std::random_device{}()};
        path_ = std::filesystem::temp_directory_path() /
                ("rolepred-test-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

    std::filesystem::path write(const std::string& name, const std::string& content) const {
        auto file = path_ / name;
        std::ofstream out(file, std::ios::binary);
        out << content;
        return file;
    }

  private:
    std::filesystem::path path_;
};

}  // namespace fixtures
