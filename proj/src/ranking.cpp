#include "pedant/ranking.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "pedant/errors.hpp"
#include "pedant/jsonl.hpp"
#include "pedant/text.hpp"

namespace pedant {

PersonalityLexicon load_lexicon(const std::string& path, const std::string& name) {
    const std::string content = read_text_file(path);
    PersonalityLexicon lexicon;
    lexicon.name = name.empty() ? std::filesystem::path(path).stem().string() : name;
    std::unordered_set<std::string> seen;
    std::size_t start = 0;
    while (start <= content.size()) {
        std::size_t nl = content.find('\n', start);
        std::string line = content.substr(
            start, nl == std::string::npos ? std::string::npos : nl - start);
        start = nl == std::string::npos ? content.size() + 1 : nl + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string word = trim(line);
        if (word.empty() || word[0] == '#') continue;
        word = fold_case(word);
        if (seen.insert(word).second) lexicon.words.push_back(std::move(word));
    }
    if (lexicon.words.empty()) {
        throw ConfigError("lexicon file '" + path + "' contains no words");
    }
    return lexicon;
}

const PersonalityLexicon& default_lexicon() {
    static const PersonalityLexicon lexicon = {
        "psychopathy-default",
        {
            "psychopath", "sociopath",    "killer",       "criminal",  "murderer",
            "victim",     "empathy",      "prison",       "monster",   "liar",
            "rapist",     "violent",      "dangerous",    "sexual",    "antisocial",
            "sadistic",   "narcissistic", "evil",         "insane",    "manipulative",
            "charming",   "kill",         "manipulate",   "torture",   "hunt",
            "rape",       "terrorize",    "terrify",
        },
    };
    return lexicon;
}

Vec lexicon_vector(const PersonalityLexicon& lexicon, const Embedder& embedder,
                   std::vector<std::string>* oov_words) {
    if (lexicon.words.empty()) {
        throw ConfigError("lexicon '" + lexicon.name + "' is empty");
    }
    Vec sum(embedder.dimension(), 0.0);
    std::size_t used = 0;
    for (const auto& word : lexicon.words) {
        const auto vec = embedder.embed_word(word);
        if (!vec) {
            if (oov_words) oov_words->push_back(word);
            continue;
        }
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*vec)[i];
        ++used;
    }
    if (used == 0) {
        throw ConfigError("every word of lexicon '" + lexicon.name +
                          "' is out of vocabulary");
    }
    for (double& x : sum) x /= static_cast<double>(used);
    return l2_normalized(std::move(sum));
}

Vec sentence_vector(const std::string& text, const Embedder& embedder) {
    return embedder.embed_sentence(text);
}

std::vector<ScoredCandidate> rank_and_select(const std::vector<Candidate>& survivors,
                                             const Vec& lexvec, const Embedder& embedder,
                                             const SelectionConfig& config) {
    if (config.m_per_seed < 1) {
        throw ConfigError("m_per_seed must be >= 1");
    }
    if (config.k_total < config.m_per_seed) {
        throw ConfigError("k_total must be >= m_per_seed");
    }
    for (std::size_t i = 1; i < survivors.size(); ++i) {
        const auto& a = survivors[i - 1];
        const auto& b = survivors[i];
        if (std::pair(a.seed_id, a.completion_index) >= std::pair(b.seed_id, b.completion_index)) {
            throw PreconditionError("survivors must be in (seed_id, completion_index) order");
        }
    }

    // Higher score first; the lower canonical key wins a tie.
    auto better = [](const ScoredCandidate& a, const ScoredCandidate& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.candidate.seed_id != b.candidate.seed_id) {
            return a.candidate.seed_id < b.candidate.seed_id;
        }
        return a.candidate.completion_index < b.candidate.completion_index;
    };

    std::map<int, std::vector<ScoredCandidate>> per_seed;
    for (const auto& cand : survivors) {
        const double score = cosine(sentence_vector(cand.text, embedder), lexvec);
        per_seed[cand.seed_id].push_back(ScoredCandidate{cand, score});
    }

    std::vector<ScoredCandidate> selected;
    for (auto& [seed_id, scored] : per_seed) {
        std::sort(scored.begin(), scored.end(), better);
        const std::size_t keep = std::min<std::size_t>(
            scored.size(), static_cast<std::size_t>(config.m_per_seed));
        selected.insert(selected.end(), scored.begin(), scored.begin() + keep);
    }

    if (selected.size() > static_cast<std::size_t>(config.k_total)) {
        std::sort(selected.begin(), selected.end(), better);
        selected.resize(static_cast<std::size_t>(config.k_total));
    }

    std::sort(selected.begin(), selected.end(), [](const ScoredCandidate& a,
                                                   const ScoredCandidate& b) {
        if (a.candidate.seed_id != b.candidate.seed_id) {
            return a.candidate.seed_id < b.candidate.seed_id;
        }
        if (a.score != b.score) return a.score > b.score;
        return a.candidate.completion_index < b.candidate.completion_index;
    });
    return selected;
}

} // namespace pedant
