#include "pedant/filtering.hpp"

#include <unordered_map>

#include "pedant/errors.hpp"
#include "pedant/text.hpp"

namespace pedant {

namespace {

void validate_config(const FilterConfig& config) {
    if (config.min_words < 1) {
        throw ConfigError("filter min_words must be >= 1");
    }
    if (!(config.paraphrase_threshold > 0.0 && config.paraphrase_threshold <= 1.0)) {
        throw ConfigError("paraphrase_threshold must be in (0, 1]");
    }
    if (config.stopword_list_id != "english-standard") {
        throw ConfigError("unknown stopword list '" + config.stopword_list_id + "'");
    }
}

bool contains_banned_word(const std::string& folded_text,
                          const std::unordered_set<std::string>& banned) {
    for (const auto& word : banned) {
        if (contains_word(folded_text, word)) return true;
    }
    return false;
}

bool ends_with_stopword(const std::vector<std::string>& tokens) {
    if (tokens.empty()) return false;
    return is_stopword(normalize_token(tokens.back()));
}

} // namespace

bool sentiment_keep(const SentimentScores& scores) {
    return scores.negative > scores.positive;
}

std::vector<std::size_t> paraphrase_filter(const std::vector<std::string>& texts,
                                           const Embedder& embedder, double threshold) {
    std::vector<std::size_t> kept;
    std::vector<Vec> kept_vectors;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        const Vec v = embedder.embed_sentence(texts[i]);
        bool is_paraphrase = false;
        for (const Vec& prev : kept_vectors) {
            if (cosine(v, prev) >= threshold) {
                is_paraphrase = true;
                break;
            }
        }
        if (!is_paraphrase) {
            kept.push_back(i);
            kept_vectors.push_back(v);
        }
    }
    return kept;
}

std::pair<std::vector<Candidate>, FilterReport> apply_filters(
    const std::vector<Candidate>& candidates, const FilterConfig& config,
    const SentimentProvider& sentiment, const Embedder& embedder) {
    validate_config(config);

    // Banned words are matched case-folded whatever the config carried.
    std::unordered_set<std::string> banned;
    for (const auto& word : config.banned_words) banned.insert(fold_case(word));

    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const auto& a = candidates[i - 1];
        const auto& b = candidates[i];
        if (std::pair(a.seed_id, a.completion_index) >= std::pair(b.seed_id, b.completion_index)) {
            throw PreconditionError("candidates must be in (seed_id, completion_index) order");
        }
    }

    FilterReport report;
    report.input_count = candidates.size();
    report.verdicts.resize(candidates.size());

    // Rules 1-5 are per-candidate except the duplicate scan, which only
    // needs the set of earlier texts.
    std::unordered_set<std::string> seen_texts;
    std::vector<std::size_t> provisional;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Candidate& cand = candidates[i];
        FilterVerdict& verdict = report.verdicts[i];
        verdict.seed_id = cand.seed_id;
        verdict.completion_index = cand.completion_index;

        const std::string folded = fold_case(cand.text);
        int removed_by = 0;
        if (contains_banned_word(folded, banned)) {
            removed_by = 1;
        } else if (!seen_texts.insert(folded).second) {
            removed_by = 2;
        } else {
            const auto tokens = tokenize(cand.text);
            if (tokens.size() < static_cast<std::size_t>(config.min_words)) {
                removed_by = 3;
            } else if (ends_with_stopword(tokens)) {
                removed_by = 4;
            } else if (config.sentiment_rule_enabled &&
                       !sentiment_keep(sentiment.score(cand.text))) {
                removed_by = 5;
            }
        }
        // The duplicate scan registers every candidate that reaches rule 2,
        // not just survivors. Texts stopped by rule 1 need no registration:
        // an identical later text contains the same banned word and is
        // charged to rule 1 itself.
        if (removed_by == 0) {
            provisional.push_back(i);
        } else {
            verdict.kept = false;
            verdict.removed_by = removed_by;
            ++report.removed_by_rule[static_cast<std::size_t>(removed_by - 1)];
        }
    }

    // Rule 6: greedy first-keeper over the rule-1..5 survivors.
    std::vector<Candidate> survivors;
    std::vector<Vec> kept_pool; // pool-wide mode
    std::unordered_map<int, std::vector<Vec>> kept_per_seed;
    for (std::size_t idx : provisional) {
        const Candidate& cand = candidates[idx];
        const Vec v = embedder.embed_sentence(cand.text);
        std::vector<Vec>& kept_vectors =
            config.paraphrase_per_seed ? kept_per_seed[cand.seed_id] : kept_pool;
        bool is_paraphrase = false;
        for (const Vec& prev : kept_vectors) {
            if (cosine(v, prev) >= config.paraphrase_threshold) {
                is_paraphrase = true;
                break;
            }
        }
        FilterVerdict& verdict = report.verdicts[idx];
        if (is_paraphrase) {
            verdict.kept = false;
            verdict.removed_by = 6;
            ++report.removed_by_rule[5];
        } else {
            verdict.kept = true;
            kept_vectors.push_back(v);
            survivors.push_back(cand);
        }
    }

    report.survivor_count = survivors.size();
    return {std::move(survivors), std::move(report)};
}

json report_to_json(const FilterReport& report) {
    json removed;
    for (std::size_t rule = 0; rule < 6; ++rule) {
        removed["rule" + std::to_string(rule + 1)] = report.removed_by_rule[rule];
    }
    json verdicts = json::array();
    for (const auto& verdict : report.verdicts) {
        json row{{"seed_id", verdict.seed_id},
                 {"completion_index", verdict.completion_index},
                 {"kept", verdict.kept}};
        if (!verdict.kept) row["removed_by"] = verdict.removed_by;
        verdicts.push_back(std::move(row));
    }
    return json{{"input", report.input_count},
                {"survivors", report.survivor_count},
                {"removed", std::move(removed)},
                {"verdicts", std::move(verdicts)}};
}

} // namespace pedant
