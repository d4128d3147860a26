#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ragcore::text {

std::string to_lower(std::string_view s);

/// Whitespace-split tokens, original case preserved.
std::vector<std::string> tokens(std::string_view s);

/// Whitespace-split tokens, lowercased.
std::vector<std::string> lower_tokens(std::string_view s);

std::unordered_set<std::string> lower_token_set(std::string_view s);

/// Sentences split on '.', '?', '!' with whitespace trimmed; empties dropped.
std::vector<std::string> split_sentences(std::string_view s);

std::string trim(std::string_view s);

/// FNV-1a 64-bit. `seed` perturbs the offset basis so distinct hash families
/// stay deterministic.
std::uint64_t fnv1a64(std::string_view s, std::uint64_t seed = 0);

}  // namespace ragcore::text
