#include "rolepred/selection.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "rolepred/errors.hpp"
#include "rolepred/evaluation.hpp"
#include "rolepred/text.hpp"

namespace rolepred {

namespace {

/// Union-find over role indices.
class DisjointSets {
  public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void merge(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  private:
    std::vector<std::size_t> parent_;
};

std::size_t coverage_count(std::string_view role, std::span<const EventInstance> instances) {
    std::size_t count = 0;
    for (const auto& instance : instances) {
        if (instance.arguments.count(std::string(role))) ++count;
    }
    return count;
}

}  // namespace

void SelectionConfig::validate() const {
    if (coverage_threshold < 0.0 || coverage_threshold > 1.0) {
        throw ValidationError("coverage_threshold must be in [0, 1]");
    }
    if (merge_threshold < 0.0 || merge_threshold > 1.0) {
        throw ValidationError("merge_threshold must be in [0, 1]");
    }
}

bool argument_equal(std::string_view a, std::string_view b, ArgumentEquality mode) {
    if (text::normalize_match_text(a) == text::normalize_match_text(b)) return true;
    if (mode == ArgumentEquality::datetime_aware) {
        auto parsed_a = normalize_datetime(a);
        auto parsed_b = normalize_datetime(b);
        if (parsed_a && parsed_b) return datetime_components_match(*parsed_a, *parsed_b);
    }
    return false;
}

std::vector<CandidateRole> filter_roles(std::span<const CandidateRole> candidates,
                                        std::span<const EventInstance> instances,
                                        const SelectionConfig& config) {
    config.validate();
    std::vector<CandidateRole> kept;
    if (instances.empty()) return kept;
    const double total = static_cast<double>(instances.size());
    for (const auto& candidate : candidates) {
        const double coverage = static_cast<double>(coverage_count(candidate.name, instances)) / total;
        if (coverage >= config.coverage_threshold) kept.push_back(candidate);
    }
    return kept;
}

double role_similarity(std::string_view role1, std::string_view role2,
                       std::span<const EventInstance> instances, const SelectionConfig& config) {
    config.validate();
    if (instances.empty()) return 0.0;

    const std::string key1(role1);
    const std::string key2(role2);
    std::size_t shared = 0;
    for (const auto& instance : instances) {
        auto it1 = instance.arguments.find(key1);
        if (it1 == instance.arguments.end()) continue;
        auto it2 = instance.arguments.find(key2);
        if (it2 == instance.arguments.end()) continue;
        if (argument_equal(it1->second.text, it2->second.text, config.argument_equality)) {
            ++shared;
        }
    }
    return static_cast<double>(shared) / static_cast<double>(instances.size());
}

std::vector<RoleCluster> merge_roles(std::span<const CandidateRole> roles,
                                     std::span<const EventInstance> instances,
                                     const SelectionConfig& config) {
    config.validate();

    const std::size_t n = roles.size();
    DisjointSets sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double similarity =
                role_similarity(roles[i].name, roles[j].name, instances, config);
            if (similarity > config.merge_threshold) sets.merge(i, j);
        }
    }

    std::map<std::size_t, std::vector<std::size_t>> components;
    for (std::size_t i = 0; i < n; ++i) components[sets.find(i)].push_back(i);

    std::vector<RoleCluster> clusters;
    clusters.reserve(components.size());
    for (auto& [root, member_indices] : components) {
        std::sort(member_indices.begin(), member_indices.end(), [&](std::size_t a, std::size_t b) {
            if (roles[a].importance != roles[b].importance) {
                return roles[a].importance > roles[b].importance;
            }
            return roles[a].name < roles[b].name;
        });
        RoleCluster cluster;
        for (std::size_t index : member_indices) cluster.members.push_back(roles[index].name);
        cluster.representative = cluster.members.front();
        cluster.importance = roles[member_indices.front()].importance;
        cluster.size = cluster.members.size();
        clusters.push_back(std::move(cluster));
    }

    std::sort(clusters.begin(), clusters.end(), [](const RoleCluster& a, const RoleCluster& b) {
        if (a.size != b.size) return a.size > b.size;
        if (a.importance != b.importance) return a.importance > b.importance;
        return a.representative < b.representative;
    });
    return clusters;
}

}  // namespace rolepred
