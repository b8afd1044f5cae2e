#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rolepred::text {

std::string lowercase(std::string_view s);

/// Trims and squeezes runs of whitespace into single spaces.
std::string collapse_whitespace(std::string_view s);

/// Whitespace-separated tokens. Empty input yields an empty list.
std::vector<std::string> tokenize(std::string_view s);

std::size_t count_tokens(std::string_view s);

std::string join(std::span<const std::string> parts, std::string_view sep = " ");

/// Removes ASCII punctuation and whitespace from both ends of the string.
std::string strip_edge_punct(std::string_view s);

/// Lowercases, strips punctuation at token edges, collapses whitespace.
/// Shared normalization for argument and role-name comparison.
std::string normalize_match_text(std::string_view s);

/// normalize_match_text, split into tokens. Tokens that were pure
/// punctuation are dropped.
std::vector<std::string> match_tokens(std::string_view s);

/// Sentence normalization for the leakage check: lowercase, collapse
/// whitespace, strip terminal punctuation.
std::string normalize_sentence(std::string_view s);

/// True when `needle` occurs in `haystack` ignoring ASCII case.
bool contains_ci(std::string_view haystack, std::string_view needle);

}  // namespace rolepred::text
