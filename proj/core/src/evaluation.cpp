#include "rolepred/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "rolepred/errors.hpp"
#include "rolepred/text.hpp"

namespace rolepred {

namespace {

using ordered_json = nlohmann::ordered_json;

int month_number(std::string_view name) {
    static const std::map<std::string, int, std::less<>> kMonths = {
        {"january", 1},   {"jan", 1},  {"february", 2}, {"feb", 2},  {"march", 3},    {"mar", 3},
        {"april", 4},     {"apr", 4},  {"may", 5},      {"june", 6}, {"jun", 6},      {"july", 7},
        {"jul", 7},       {"august", 8}, {"aug", 8},    {"september", 9}, {"sep", 9}, {"sept", 9},
        {"october", 10},  {"oct", 10}, {"november", 11}, {"nov", 11}, {"december", 12}, {"dec", 12},
    };
    auto it = kMonths.find(text::lowercase(name));
    return it == kMonths.end() ? 0 : it->second;
}

const char* month_name(int month) {
    static const char* kNames[] = {"January", "February", "March",     "April",   "May",
                                   "June",    "July",      "August",   "September",
                                   "October", "November",  "December"};
    return kNames[month - 1];
}

bool valid_day(int day) { return day >= 1 && day <= 31; }
bool valid_month(int month) { return month >= 1 && month <= 12; }

/// Pairs every cluster with every gold group it matches, recording the
/// first matching alias and its similarity. Shared by alignment and
/// role scoring.
struct MatchTable {
    // per cluster: list of (group index, alias, similarity)
    std::vector<std::vector<std::tuple<std::size_t, std::string, double>>> matches;
};

MatchTable build_match_table(std::span<const RoleCluster> clusters, const GoldAnnotation& gold,
                             const MatchConfig& config, EmbedBackend* embedder) {
    config.validate();
    MatchTable table;
    table.matches.resize(clusters.size());

    if (config.strategy == MatchStrategy::hard) {
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            const std::string phrase = cluster_phrase(clusters[c]);
            for (std::size_t g = 0; g < gold.role_groups.size(); ++g) {
                for (const auto& alias : gold.role_groups[g]) {
                    if (hard_match(phrase, alias, config)) {
                        table.matches[c].emplace_back(g, alias, 1.0);
                        break;
                    }
                }
            }
        }
        return table;
    }

    if (embedder == nullptr) {
        throw ValidationError("soft matching requires an embedding backend");
    }

    // One batched embed call covers every phrase and every alias.
    EmbedRequest request;
    std::vector<std::size_t> alias_offsets;
    for (const auto& cluster : clusters) request.texts.push_back(cluster_phrase(cluster));
    for (const auto& group : gold.role_groups) {
        alias_offsets.push_back(request.texts.size());
        for (const auto& alias : group) request.texts.push_back(alias);
    }
    EmbedResponse response = embedder->embed(request);
    validate_response(request, response);

    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (std::size_t g = 0; g < gold.role_groups.size(); ++g) {
            for (std::size_t a = 0; a < gold.role_groups[g].size(); ++a) {
                const double similarity = cosine_similarity(response.vectors[c],
                                                            response.vectors[alias_offsets[g] + a]);
                if (similarity >= config.soft_threshold) {
                    table.matches[c].emplace_back(g, gold.role_groups[g][a], similarity);
                    break;
                }
            }
        }
    }
    return table;
}

EvalReport make_report(std::size_t true_positives, std::size_t predicted, std::size_t matched_gold,
                       std::size_t total_gold, const MatchConfig& config) {
    EvalReport report;
    report.strategy = config;
    report.precision =
        predicted == 0 ? 0.0 : static_cast<double>(true_positives) / static_cast<double>(predicted);
    report.recall =
        total_gold == 0 ? 0.0 : static_cast<double>(matched_gold) / static_cast<double>(total_gold);
    report.f1 = f1_score(report.precision, report.recall);
    return report;
}

}  // namespace

std::string_view to_string(MatchStrategy strategy) {
    return strategy == MatchStrategy::hard ? "hard" : "soft";
}

MatchStrategy match_strategy_from_string(std::string_view name) {
    if (name == "hard") return MatchStrategy::hard;
    if (name == "soft") return MatchStrategy::soft;
    throw ValidationError("unknown match strategy: " + std::string(name));
}

void MatchConfig::validate() const {
    if (soft_threshold < 0.0 || soft_threshold > 1.0) {
        throw ValidationError("soft_threshold must be in [0, 1]");
    }
}

double f1_score(double precision, double recall) {
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

std::string cluster_phrase(const RoleCluster& cluster) {
    if (cluster.members.empty()) throw ValidationError("cluster_phrase requires a non-empty cluster");
    return text::join(cluster.members);
}

bool hard_match(std::string_view pred, std::string_view gold, const MatchConfig& config) {
    auto keep = [&](std::vector<std::string> tokens) {
        if (config.stopword_filtering) {
            std::erase_if(tokens, [&](const std::string& t) { return config.stopwords.count(t); });
        }
        return tokens;
    };
    const auto pred_tokens = keep(text::match_tokens(pred));
    const auto gold_tokens = keep(text::match_tokens(gold));
    for (const auto& token : pred_tokens) {
        if (std::find(gold_tokens.begin(), gold_tokens.end(), token) != gold_tokens.end()) {
            return true;
        }
    }
    return false;
}

SoftMatch soft_match(std::string_view pred, std::string_view gold, EmbedBackend& backend,
                     const MatchConfig& config) {
    config.validate();
    EmbedRequest request{{std::string(pred), std::string(gold)}};
    EmbedResponse response = backend.embed(request);
    validate_response(request, response);
    const double similarity = cosine_similarity(response.vectors[0], response.vectors[1]);
    return {similarity, similarity >= config.soft_threshold};
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ValidationError("cosine_similarity requires equal-length vectors");
    }
    double dot = 0.0;
    double norm_a = 0.0;
    double norm_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        norm_a += a[i] * a[i];
        norm_b += b[i] * b[i];
    }
    if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
    return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

std::optional<DateTimeParts> normalize_datetime(std::string_view input) {
    const std::string cleaned = text::collapse_whitespace(text::strip_edge_punct(input));
    if (cleaned.empty()) return std::nullopt;

    static const std::regex iso(R"((\d{4})-(\d{1,2})-(\d{1,2}))");
    static const std::regex month_day_year(R"(([A-Za-z]+) (\d{1,2}),? (\d{4}))");
    static const std::regex day_month_year(R"((\d{1,2}) ([A-Za-z]+),? (\d{4}))");
    static const std::regex month_day(R"(([A-Za-z]+) (\d{1,2}))");
    static const std::regex clock(R"((\d{1,2}):(\d{2})(?: ?([AaPp])\.?[Mm]\.?)?)");
    static const std::regex bare_year(R"((\d{4}))");

    std::smatch m;
    DateTimeParts parts;

    if (std::regex_match(cleaned, m, iso)) {
        const int month = std::stoi(m[2]);
        const int day = std::stoi(m[3]);
        if (!valid_month(month) || !valid_day(day)) return std::nullopt;
        parts.year = std::stoi(m[1]);
        parts.month = month;
        parts.day = day;
        return parts;
    }
    if (std::regex_match(cleaned, m, month_day_year)) {
        const int month = month_number(m[1].str());
        const int day = std::stoi(m[2]);
        if (month == 0 || !valid_day(day)) return std::nullopt;
        parts.year = std::stoi(m[3]);
        parts.month = month;
        parts.day = day;
        return parts;
    }
    if (std::regex_match(cleaned, m, day_month_year)) {
        const int day = std::stoi(m[1]);
        const int month = month_number(m[2].str());
        if (month == 0 || !valid_day(day)) return std::nullopt;
        parts.year = std::stoi(m[3]);
        parts.month = month;
        parts.day = day;
        return parts;
    }
    if (std::regex_match(cleaned, m, month_day)) {
        const int month = month_number(m[1].str());
        const int day = std::stoi(m[2]);
        if (month == 0 || !valid_day(day)) return std::nullopt;
        parts.month = month;
        parts.day = day;
        return parts;
    }
    if (std::regex_match(cleaned, m, clock)) {
        int hour = std::stoi(m[1]);
        const int minute = std::stoi(m[2]);
        if (minute > 59) return std::nullopt;
        if (m[3].matched) {
            if (hour < 1 || hour > 12) return std::nullopt;
            const char meridiem = static_cast<char>(std::tolower(static_cast<unsigned char>(m[3].str()[0])));
            hour = hour % 12 + (meridiem == 'p' ? 12 : 0);
        } else if (hour > 23) {
            return std::nullopt;
        }
        parts.hour = hour;
        parts.minute = minute;
        return parts;
    }
    if (std::regex_match(cleaned, m, bare_year)) {
        parts.year = std::stoi(m[1]);
        return parts;
    }
    return std::nullopt;
}

std::string render_datetime(const DateTimeParts& parts) {
    char buffer[32];
    if (parts.year && parts.month && parts.day) {
        std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02d", *parts.year, *parts.month, *parts.day);
        return buffer;
    }
    if (parts.month && parts.day && !parts.year && !parts.hour && !parts.minute) {
        std::snprintf(buffer, sizeof(buffer), "%s %d", month_name(*parts.month), *parts.day);
        return buffer;
    }
    if (parts.year && !parts.month && !parts.day && !parts.hour && !parts.minute) {
        std::snprintf(buffer, sizeof(buffer), "%04d", *parts.year);
        return buffer;
    }
    if (parts.hour && parts.minute && !parts.year && !parts.month && !parts.day) {
        std::snprintf(buffer, sizeof(buffer), "%02d:%02d", *parts.hour, *parts.minute);
        return buffer;
    }
    throw ValidationError("datetime component combination has no canonical rendering");
}

bool datetime_components_match(const DateTimeParts& a, const DateTimeParts& b) {
    bool any_shared = false;
    auto check = [&](const std::optional<int>& x, const std::optional<int>& y) {
        if (x && y) {
            any_shared = true;
            return *x == *y;
        }
        return true;
    };
    return check(a.year, b.year) && check(a.month, b.month) && check(a.day, b.day) &&
           check(a.hour, b.hour) && check(a.minute, b.minute) && any_shared;
}

bool argument_match(std::string_view pred, std::string_view gold) {
    const auto pred_tokens = text::match_tokens(pred);
    const auto gold_tokens = text::match_tokens(gold);

    auto contains = [](const std::vector<std::string>& outer, const std::vector<std::string>& inner) {
        if (inner.empty()) return false;
        if (inner.size() > outer.size()) return false;
        for (std::size_t start = 0; start + inner.size() <= outer.size(); ++start) {
            if (std::equal(inner.begin(), inner.end(), outer.begin() + start)) return true;
        }
        return false;
    };
    if (pred_tokens.empty() && gold_tokens.empty()) return true;
    if (contains(pred_tokens, gold_tokens) || contains(gold_tokens, pred_tokens)) return true;

    const auto pred_dt = normalize_datetime(pred);
    const auto gold_dt = normalize_datetime(gold);
    if (pred_dt && gold_dt) return datetime_components_match(*pred_dt, *gold_dt);
    return false;
}

RoleAlignment align_roles(std::span<const RoleCluster> clusters, const GoldAnnotation& gold,
                          const MatchConfig& config, EmbedBackend* embedder) {
    const MatchTable table = build_match_table(clusters, gold, config, embedder);
    RoleAlignment alignment;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        std::vector<std::size_t> groups;
        for (const auto& [group, alias, similarity] : table.matches[c]) groups.push_back(group);
        if (!groups.empty()) alignment.aligned_groups[clusters[c].representative] = std::move(groups);
    }
    return alignment;
}

EvalReport score_roles(std::span<const RoleCluster> clusters, const GoldAnnotation& gold,
                       const MatchConfig& config, EmbedBackend* embedder) {
    if (gold.role_groups.empty()) {
        throw ValidationError("score_roles requires gold role groups");
    }
    const MatchTable table = build_match_table(clusters, gold, config, embedder);

    std::size_t true_positives = 0;
    std::set<std::size_t> matched_groups;
    std::vector<MatchedPair> pairs;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        if (!table.matches[c].empty()) ++true_positives;
        for (const auto& [group, alias, similarity] : table.matches[c]) {
            matched_groups.insert(group);
            pairs.push_back({cluster_phrase(clusters[c]), alias, similarity});
        }
    }

    EvalReport report = make_report(true_positives, clusters.size(), matched_groups.size(),
                                    gold.role_groups.size(), config);
    report.matched_pairs = std::move(pairs);
    return report;
}

EvalReport score_arguments(std::span<const EventInstance> instances, const GoldAnnotation& gold,
                           const RoleAlignment& alignment) {
    std::size_t predicted = 0;
    std::size_t true_positives = 0;
    std::set<std::pair<std::string, std::string>> matched_gold;  // (doc, canonical role)
    std::vector<MatchedPair> pairs;

    for (const auto& instance : instances) {
        auto doc_gold = gold.arguments.find(instance.document_id);
        for (const auto& [role, argument] : instance.arguments) {
            ++predicted;
            auto aligned = alignment.aligned_groups.find(role);
            if (aligned == alignment.aligned_groups.end()) continue;
            if (doc_gold == gold.arguments.end()) continue;

            bool matched = false;
            for (std::size_t group : aligned->second) {
                for (const auto& alias : gold.role_groups.at(group)) {
                    auto gold_args = doc_gold->second.find(alias);
                    if (gold_args == doc_gold->second.end()) continue;
                    for (const auto& gold_string : gold_args->second) {
                        if (argument_match(argument.text, gold_string)) {
                            matched = true;
                            matched_gold.emplace(instance.document_id, alias);
                            pairs.push_back({argument.text, gold_string, 1.0});
                        }
                    }
                }
            }
            if (matched) ++true_positives;
        }
    }

    std::size_t total_gold = 0;
    for (const auto& [doc_id, roles] : gold.arguments) {
        for (const auto& [role, args] : roles) {
            if (!args.empty()) ++total_gold;
        }
    }

    EvalReport report =
        make_report(true_positives, predicted, matched_gold.size(), total_gold, MatchConfig{});
    report.matched_pairs = std::move(pairs);
    return report;
}

std::string eval_report_to_json_text(const EvalReport& report) {
    ordered_json j;
    j["strategy"] = std::string(to_string(report.strategy.strategy));
    j["soft_threshold"] = report.strategy.soft_threshold;
    j["stopword_filtering"] = report.strategy.stopword_filtering;
    j["precision"] = report.precision;
    j["recall"] = report.recall;
    j["f1"] = report.f1;
    auto pairs = ordered_json::array();
    for (const auto& pair : report.matched_pairs) {
        pairs.push_back({{"prediction", pair.prediction},
                         {"gold", pair.gold},
                         {"similarity", pair.similarity}});
    }
    j["matched_pairs"] = std::move(pairs);
    return j.dump(2) + "\n";
}

std::string eval_report_table(const EvalReport& report) {
    char line[128];
    std::ostringstream out;
    out << "strategy  precision  recall    f1\n";
    std::snprintf(line, sizeof(line), "%-8s  %9.4f  %6.4f  %6.4f\n",
                  std::string(to_string(report.strategy.strategy)).c_str(), report.precision,
                  report.recall, report.f1);
    out << line;
    return out.str();
}

}  // namespace rolepred
