#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace pedant {

// ASCII lowercase fold. Unicode letters pass through unchanged.
std::string fold_case(std::string_view s);

// Maximal non-whitespace runs.
std::vector<std::string> tokenize(std::string_view text);
std::size_t token_count(std::string_view text);

// Strip leading/trailing ASCII punctuation and common typographic quote marks.
std::string strip_punct(std::string_view token);

// Lowercased token with surrounding punctuation removed; "" if nothing is left.
std::string normalize_token(std::string_view token);

// Collapse all whitespace runs to single spaces and trim the ends.
std::string collapse_whitespace(std::string_view s);

// Trim leading/trailing ASCII whitespace only.
std::string trim(std::string_view s);

// Remove http/https/ftp URLs and www.-prefixed hosts.
std::string remove_links(const std::string& s);

// Drop emoji/pictographic codepoints; maps unicode spaces to ' ' and drops
// invalid UTF-8 bytes.
std::string remove_emoji(std::string_view s);

bool is_emoji_codepoint(char32_t cp);

// True when `word` (already case-folded) occurs in `text` delimited by
// non-word characters. Word characters are alphanumerics and apostrophes.
bool contains_word(std::string_view text, std::string_view word);

// The fixed english-standard stop word list (179 function words).
const std::unordered_set<std::string>& english_stopwords();
const std::vector<std::string>& english_stopword_list();

bool is_stopword(std::string_view folded_token);

} // namespace pedant
