#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rolepred/extraction.hpp"
#include "rolepred/generation.hpp"

namespace rolepred {

enum class ArgumentEquality { exact_normalized, datetime_aware };

struct SelectionConfig {
    double coverage_threshold = 0.4;  // inclusive: kept when coverage >= threshold
    double merge_threshold = 0.5;     // exclusive: merged when similarity > threshold
    ArgumentEquality argument_equality = ArgumentEquality::datetime_aware;

    void validate() const;
};

/// Argument agreement used by role similarity. datetime_aware adds
/// datetime-component equality on top of normalized string equality.
bool argument_equal(std::string_view a, std::string_view b, ArgumentEquality mode);

/// Keeps roles whose arguments appear in at least coverage_threshold of
/// the instances; preserves the input (importance) ordering.
std::vector<CandidateRole> filter_roles(std::span<const CandidateRole> candidates,
                                        std::span<const EventInstance> instances,
                                        const SelectionConfig& config);

/// Fraction of instances in which both roles hold equal arguments.
/// The denominator is the total instance count.
double role_similarity(std::string_view role1, std::string_view role2,
                       std::span<const EventInstance> instances, const SelectionConfig& config);

/// A merged group of near-duplicate roles, the final output unit.
struct RoleCluster {
    std::vector<std::string> members;  // importance descending, name ascending
    std::string representative;       // member with the highest importance
    double importance = 0.0;          // max member importance
    std::size_t size = 0;

    bool operator==(const RoleCluster&) const = default;
};

/// Single-linkage merge: connected components of the strictly-above-
/// threshold similarity graph, ranked by (size desc, importance desc,
/// representative asc).
std::vector<RoleCluster> merge_roles(std::span<const CandidateRole> roles,
                                     std::span<const EventInstance> instances,
                                     const SelectionConfig& config);

}  // namespace rolepred
