#pragma once

#include <string>
#include <vector>

#include "pedant/corpus.hpp"
#include "pedant/generator.hpp"

namespace pedant {

enum class BeliefCategory { SELF, OTHERS };

std::string to_string(BeliefCategory category);

struct SeedSentence {
    int seed_id = 0;
    std::string text;
    BeliefCategory belief_category = BeliefCategory::SELF;
};

struct SeedSet {
    std::vector<SeedSentence> seeds;

    // Throws ConfigError unless ids are contiguous from 0 and every text is
    // non-empty. Seed files additionally must carry both belief categories;
    // load_seeds enforces that, since programmatic sets (a single probe
    // seed, say) legitimately use one category.
    void validate() const;
};

struct Candidate {
    int seed_id = 0;
    int completion_index = 0;
    std::string text;
};

struct GenerationResult {
    std::vector<Candidate> candidates;
    int failures = 0;
};

// Stage 2: produce the tuned model handle.
ModelHandle fine_tune(GeneratorBackend& backend, const std::vector<CleanSentence>& corpus,
                      const TrainingConfig& config);

// Stage 3: prompt the model with every seed, completions_per_seed times.
// Always returns |seeds| * completions_per_seed candidates in (seed_id,
// completion_index) order; a completion that fails twice becomes an
// empty-text candidate and bumps `failures`.
GenerationResult generate_completions(GeneratorBackend& backend, const ModelHandle& model,
                                      const SeedSet& seeds, const SamplingParams& params);

// Removes the prompt prefix (when present) and trims whitespace.
std::string strip_prompt(const std::string& raw, const std::string& prompt);

// Plain-text seed file with `# beliefs_about_self` / `# beliefs_about_others`
// headers, one sentence per line. Output is always SELF seeds first.
SeedSet load_seeds(const std::string& path);

// The packaged 40-sentence seed set (20 per category).
const SeedSet& default_seed_set();

} // namespace pedant
