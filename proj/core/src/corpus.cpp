#include "rolepred/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rolepred/errors.hpp"
#include "rolepred/text.hpp"

namespace rolepred {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::size_t kMinSentences = 4;
constexpr std::size_t kLeakageWordThreshold = 4;  // "more than 4" is strict

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open file for writing: " + path.string());
    out << content;
    if (!out) throw Error("failed writing file: " + path.string());
}

Document document_from_json(const ordered_json& j) {
    Document doc;
    doc.id = j.at("id").get<std::string>();
    doc.title = j.value("title", std::string{});
    doc.sentences = j.at("sentences").get<std::vector<std::string>>();
    for (const auto& range : j.at("paragraphs")) {
        if (!range.is_array() || range.size() != 2) {
            throw ParseError("paragraph range must be a [start, end] pair in document '" + doc.id + "'");
        }
        doc.paragraphs.emplace_back(range[0].get<int>(), range[1].get<int>());
    }
    return doc;
}

ordered_json document_to_json(const Document& doc) {
    ordered_json j;
    j["id"] = doc.id;
    j["title"] = doc.title;
    j["sentences"] = doc.sentences;
    auto ranges = ordered_json::array();
    for (const auto& [start, end] : doc.paragraphs) ranges.push_back({start, end});
    j["paragraphs"] = std::move(ranges);
    return j;
}

}  // namespace

std::string_view to_string(EntityCategory category) {
    switch (category) {
        case EntityCategory::person: return "PERSON";
        case EntityCategory::location: return "LOCATION";
        case EntityCategory::number: return "NUMBER";
        case EntityCategory::other: return "OTHER";
    }
    throw Error("unknown entity category");
}

EntityCategory entity_category_from_string(std::string_view name) {
    if (name == "PERSON") return EntityCategory::person;
    if (name == "LOCATION") return EntityCategory::location;
    if (name == "NUMBER") return EntityCategory::number;
    if (name == "OTHER") return EntityCategory::other;
    throw ValidationError("unknown entity category: " + std::string(name));
}

int Document::paragraph_of(int sentence_index) const {
    for (std::size_t p = 0; p < paragraphs.size(); ++p) {
        if (sentence_index >= paragraphs[p].first && sentence_index <= paragraphs[p].second) {
            return static_cast<int>(p);
        }
    }
    throw ValidationError("sentence index " + std::to_string(sentence_index) +
                          " not covered by any paragraph in document '" + id + "'");
}

std::string Document::full_text() const {
    return text::join(sentences);
}

const Document* Corpus::find_document(std::string_view id) const {
    for (const auto& doc : documents) {
        if (doc.id == id) return &doc;
    }
    return nullptr;
}

void validate_corpus(const Corpus& corpus) {
    if (corpus.event_type.empty()) throw ValidationError("event_type is empty");

    std::set<std::string> seen_ids;
    for (const auto& doc : corpus.documents) {
        if (doc.id.empty()) throw ValidationError("document with empty id");
        if (!seen_ids.insert(doc.id).second) {
            throw ValidationError("duplicate document id '" + doc.id + "'");
        }
        if (doc.sentences.empty()) {
            throw ValidationError("document '" + doc.id + "' has no sentences");
        }
        if (doc.sentences.size() < kMinSentences) {
            throw ValidationError("document '" + doc.id + "' has " +
                                  std::to_string(doc.sentences.size()) +
                                  " sentences (minimum " + std::to_string(kMinSentences) + ")");
        }
        const int n = static_cast<int>(doc.sentences.size());
        int expected_start = 0;
        for (const auto& [start, end] : doc.paragraphs) {
            if (start != expected_start || end < start) {
                throw ValidationError("paragraph ranges of document '" + doc.id +
                                      "' are not disjoint, ordered, and covering");
            }
            expected_start = end + 1;
        }
        if (expected_start != n) {
            throw ValidationError("paragraph ranges of document '" + doc.id +
                                  "' do not cover all " + std::to_string(n) + " sentences");
        }
    }

    if (!corpus.gold) return;
    const auto& gold = *corpus.gold;

    for (const auto& group : gold.role_groups) {
        if (group.empty()) throw ValidationError("empty role group in gold annotation");
        for (const auto& role : group) {
            if (role.empty()) throw ValidationError("empty role string in gold role group");
        }
    }
    for (const auto& [doc_id, roles] : gold.arguments) {
        if (!seen_ids.count(doc_id)) {
            throw ValidationError("gold arguments reference unknown document '" + doc_id + "'");
        }
        for (const auto& [role, args] : roles) {
            std::size_t groups_containing = 0;
            for (const auto& group : gold.role_groups) {
                for (const auto& alias : group) {
                    if (alias == role) {
                        ++groups_containing;
                        break;
                    }
                }
            }
            if (groups_containing != 1) {
                throw ValidationError("gold role '" + role + "' appears in " +
                                      std::to_string(groups_containing) +
                                      " role groups (expected exactly 1)");
            }
            for (const auto& arg : args) {
                if (arg.empty()) {
                    throw ValidationError("empty gold argument for role '" + role +
                                          "' in document '" + doc_id + "'");
                }
            }
        }
    }
}

Corpus corpus_from_json_text(std::string_view json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed corpus JSON: ") + e.what());
    }

    Corpus corpus;
    try {
        corpus.event_type = j.at("event_type").get<std::string>();
        for (const auto& doc_json : j.at("documents")) {
            corpus.documents.push_back(document_from_json(doc_json));
        }
        if (j.contains("gold") && !j["gold"].is_null()) {
            GoldAnnotation gold;
            const auto& g = j["gold"];
            gold.role_groups = g.at("role_groups").get<std::vector<std::vector<std::string>>>();
            if (g.contains("arguments")) {
                for (const auto& [doc_id, roles] : g["arguments"].items()) {
                    for (const auto& [role, args] : roles.items()) {
                        gold.arguments[doc_id][role] = args.get<std::vector<std::string>>();
                    }
                }
            }
            corpus.gold = std::move(gold);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("corpus JSON does not match schema: ") + e.what());
    }

    validate_corpus(corpus);
    return corpus;
}

std::string corpus_to_json_text(const Corpus& corpus) {
    ordered_json j;
    j["event_type"] = corpus.event_type;
    auto docs = ordered_json::array();
    for (const auto& doc : corpus.documents) docs.push_back(document_to_json(doc));
    j["documents"] = std::move(docs);
    if (corpus.gold) {
        ordered_json g;
        g["role_groups"] = corpus.gold->role_groups;
        ordered_json args = ordered_json::object();
        for (const auto& [doc_id, roles] : corpus.gold->arguments) {
            ordered_json per_doc = ordered_json::object();
            for (const auto& [role, strings] : roles) per_doc[role] = strings;
            args[doc_id] = std::move(per_doc);
        }
        g["arguments"] = std::move(args);
        j["gold"] = std::move(g);
    }
    return j.dump(2) + "\n";
}

Corpus load_corpus(const std::filesystem::path& path) {
    return corpus_from_json_text(read_file(path));
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    write_file(path, corpus_to_json_text(corpus));
}

int arg_scatter(const Document& document,
                const std::map<std::string, std::vector<std::string>>& gold_args_for_doc) {
    std::set<int> sentence_indices;
    for (const auto& [role, args] : gold_args_for_doc) {
        for (const auto& arg : args) {
            for (std::size_t s = 0; s < document.sentences.size(); ++s) {
                if (text::contains_ci(document.sentences[s], arg)) {
                    sentence_indices.insert(static_cast<int>(s));
                    break;
                }
            }
        }
    }
    return static_cast<int>(sentence_indices.size());
}

CorpusStats corpus_stats(const Corpus& corpus) {
    if (!corpus.gold) throw ValidationError("corpus_stats requires gold annotations");
    const auto& gold = *corpus.gold;

    CorpusStats stats;
    stats.num_documents = corpus.documents.size();
    stats.num_roles = gold.role_groups.size();

    for (const auto& [doc_id, roles] : gold.arguments) {
        for (const auto& [role, args] : roles) {
            if (!args.empty()) ++stats.num_arguments;
        }
    }

    double scatter_sum = 0.0;
    static const std::map<std::string, std::vector<std::string>> kNoArgs;
    for (const auto& doc : corpus.documents) {
        auto it = gold.arguments.find(doc.id);
        scatter_sum += arg_scatter(doc, it == gold.arguments.end() ? kNoArgs : it->second);
    }
    stats.mean_arg_scatter =
        corpus.documents.empty() ? 0.0 : scatter_sum / static_cast<double>(corpus.documents.size());

    // A corpus holds a single event type, so this equals the role count.
    stats.mean_roles_per_event = static_cast<double>(stats.num_roles);
    return stats;
}

std::string normalize_reference_sentence(std::string_view sentence) {
    return text::normalize_sentence(sentence);
}

std::vector<std::string> leakage_overlap(const Corpus& corpus,
                                         const std::set<std::string>& reference_sentences) {
    std::set<std::string> normalized_reference;
    for (const auto& sentence : reference_sentences) {
        normalized_reference.insert(normalize_reference_sentence(sentence));
    }

    std::vector<std::string> flagged;
    for (const auto& doc : corpus.documents) {
        for (const auto& sentence : doc.sentences) {
            std::string normalized = normalize_reference_sentence(sentence);
            if (text::count_tokens(normalized) <= kLeakageWordThreshold) continue;
            if (normalized_reference.count(normalized)) {
                flagged.push_back(doc.id);
                break;
            }
        }
    }
    return flagged;
}

}  // namespace rolepred
