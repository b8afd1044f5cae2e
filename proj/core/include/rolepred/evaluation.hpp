#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rolepred/backend.hpp"
#include "rolepred/corpus.hpp"
#include "rolepred/extraction.hpp"
#include "rolepred/selection.hpp"

namespace rolepred {

enum class MatchStrategy { hard, soft };

std::string_view to_string(MatchStrategy strategy);
MatchStrategy match_strategy_from_string(std::string_view name);

struct MatchConfig {
    MatchStrategy strategy = MatchStrategy::hard;
    double soft_threshold = 0.7;
    std::set<std::string> stopwords = {"the", "a", "an", "of", "in", "this", "and"};
    bool stopword_filtering = true;

    void validate() const;
};

struct MatchedPair {
    std::string prediction;
    std::string gold;
    double similarity = 0.0;
};

struct EvalReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::vector<MatchedPair> matched_pairs;
    MatchConfig strategy;
};

/// Harmonic mean; 0 when precision + recall is 0.
double f1_score(double precision, double recall);

/// Cluster members joined with single spaces, in cluster order.
std::string cluster_phrase(const RoleCluster& cluster);

/// Word-overlap equivalence after lowercasing and punctuation stripping,
/// with optional stopword removal.
bool hard_match(std::string_view pred, std::string_view gold, const MatchConfig& config);

struct SoftMatch {
    double similarity = 0.0;
    bool match = false;
};

/// Cosine of the backend embeddings, thresholded at soft_threshold.
SoftMatch soft_match(std::string_view pred, std::string_view gold, EmbedBackend& backend,
                     const MatchConfig& config);

double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Partially populated datetime; absent fields stay absent (no
/// current-date defaults).
struct DateTimeParts {
    std::optional<int> year;
    std::optional<int> month;
    std::optional<int> day;
    std::optional<int> hour;
    std::optional<int> minute;

    bool operator==(const DateTimeParts&) const = default;
};

/// Parses ISO dates, "Month D, Y", "D Month Y", "Month D", clock times,
/// and bare 4-digit years. Anything else is unparseable.
std::optional<DateTimeParts> normalize_datetime(std::string_view text);

/// Canonical rendering of parser-producible component sets; reparsing it
/// yields the same components.
std::string render_datetime(const DateTimeParts& parts);

/// Datetime equality used by argument matching: both sides share at least
/// one populated component and agree on every shared one.
bool datetime_components_match(const DateTimeParts& a, const DateTimeParts& b);

/// Normalized token containment in either direction, or datetime
/// component equality when both sides parse.
bool argument_match(std::string_view pred, std::string_view gold);

/// Gold group indices matched per cluster, keyed by representative name.
struct RoleAlignment {
    std::map<std::string, std::vector<std::size_t>> aligned_groups;
};

/// Matches every cluster phrase against every gold alias group.
/// `embedder` is required for the soft strategy.
RoleAlignment align_roles(std::span<const RoleCluster> clusters, const GoldAnnotation& gold,
                          const MatchConfig& config, EmbedBackend* embedder = nullptr);

/// Role prediction scoring: precision over clusters, recall over gold
/// groups (many-to-many matching).
EvalReport score_roles(std::span<const RoleCluster> clusters, const GoldAnnotation& gold,
                       const MatchConfig& config, EmbedBackend* embedder = nullptr);

/// Downstream argument scoring under a role alignment, micro-averaged
/// over documents.
EvalReport score_arguments(std::span<const EventInstance> instances, const GoldAnnotation& gold,
                           const RoleAlignment& alignment);

std::string eval_report_to_json_text(const EvalReport& report);
std::string eval_report_table(const EvalReport& report);

}  // namespace rolepred
