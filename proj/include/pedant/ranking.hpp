#pragma once

#include <string>
#include <vector>

#include "pedant/embedding.hpp"
#include "pedant/generation.hpp"

namespace pedant {

struct PersonalityLexicon {
    std::string name;
    std::vector<std::string> words; // unique, case-folded
};

struct ScoredCandidate {
    Candidate candidate;
    double score = 0.0;
};

struct SelectionConfig {
    int m_per_seed = 50;
    int k_total = 2000;
};

// Plain-text lexicon: one word per line, `#` comments and blank lines ignored.
PersonalityLexicon load_lexicon(const std::string& path, const std::string& name = "");

// The packaged 28-word anchor list.
const PersonalityLexicon& default_lexicon();

// Normalized mean of the lexicon word vectors. Out-of-vocabulary words are
// skipped and appended to *oov_words when given; an all-OOV lexicon is a
// config error.
Vec lexicon_vector(const PersonalityLexicon& lexicon, const Embedder& embedder,
                   std::vector<std::string>* oov_words = nullptr);

// Normalized mean of the non-stop-word token vectors; zero vector when
// nothing is embeddable.
Vec sentence_vector(const std::string& text, const Embedder& embedder);

// Score every survivor against lexvec, keep the top m_per_seed per seed,
// cap the union at k_total by score. Ties break toward the lower canonical
// (seed_id, completion_index). Output ordering: (seed_id, score descending,
// completion_index).
std::vector<ScoredCandidate> rank_and_select(const std::vector<Candidate>& survivors,
                                             const Vec& lexvec, const Embedder& embedder,
                                             const SelectionConfig& config);

} // namespace pedant
