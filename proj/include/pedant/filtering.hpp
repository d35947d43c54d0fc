#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pedant/embedding.hpp"
#include "pedant/generation.hpp"
#include "pedant/jsonl.hpp"
#include "pedant/sentiment.hpp"

namespace pedant {

struct FilterConfig {
    std::unordered_set<std::string> banned_words = {"psychopath", "antisocial", "sociopath"};
    int min_words = 3;
    std::string stopword_list_id = "english-standard";
    bool sentiment_rule_enabled = true;
    double paraphrase_threshold = 0.90;
    bool paraphrase_per_seed = false;
};

struct FilterVerdict {
    int seed_id = 0;
    int completion_index = 0;
    bool kept = false;
    int removed_by = 0; // 1..6, 0 when kept
};

struct FilterReport {
    std::size_t input_count = 0;
    std::size_t survivor_count = 0;
    std::array<std::size_t, 6> removed_by_rule{}; // index 0 holds rule 1
    std::vector<FilterVerdict> verdicts;
};

// Removal rules, applied in order; a candidate is charged to the first rule
// that fires:
//   1. contains a banned word (word-boundary, case-insensitive)
//   2. case-folded exact duplicate of an earlier candidate
//   3. fewer than min_words words
//   4. ends with a stop word
//   5. not more negative than positive in sentiment
//   6. paraphrase of an earlier kept candidate (cosine >= threshold)
std::pair<std::vector<Candidate>, FilterReport> apply_filters(
    const std::vector<Candidate>& candidates, const FilterConfig& config,
    const SentimentProvider& sentiment, const Embedder& embedder);

// Rule 5 predicate: keep only strictly more negative than positive.
bool sentiment_keep(const SentimentScores& scores);

// Rule 6 on its own: greedy first-keeper scan, returns indices kept.
std::vector<std::size_t> paraphrase_filter(const std::vector<std::string>& texts,
                                           const Embedder& embedder, double threshold);

json report_to_json(const FilterReport& report);

} // namespace pedant
