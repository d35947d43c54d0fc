#include "pedant/generator.hpp"

#include <array>
#include <bit>
#include <cstdio>

#include "pedant/errors.hpp"
#include "pedant/rng.hpp"

namespace pedant {

namespace {

constexpr std::uint64_t kBaseModelFingerprint = 0x9e3779b97f4a7c15ull;

const std::array<const char*, 30> kDarkWords = {
    "kill",     "killer",    "murderer",   "victim",   "violent",
    "dangerous", "evil",     "monster",    "torture",  "hunt",
    "manipulate", "manipulative", "criminal", "prison", "insane",
    "sadistic", "liar",      "terrify",    "terrorize", "charming",
    "blood",    "fear",      "pain",       "prey",     "weak",
    "suffer",   "cruel",     "rage",       "empathy",  "hollow",
};

const std::array<const char*, 32> kNeutralWords = {
    "i",      "feel",   "the",     "people",  "they",    "them",
    "world",  "never",  "always",  "inside",  "nothing", "when",
    "see",    "their",  "eyes",    "within",  "know",    "want",
    "cannot", "truly",  "others",  "every",   "night",   "thoughts",
    "mind",   "heart",  "cold",    "empty",   "silence", "pretend",
    "masks",  "beneath",
};

const std::array<const char*, 10> kPositiveWords = {
    "happy", "love", "wonderful", "friends", "kind",
    "smile", "joy",  "grateful",  "beautiful", "peaceful",
};

const std::array<const char*, 3> kBannedWords = {
    "psychopath", "sociopath", "antisocial",
};

// Occasionally emitted verbatim; repeats create exact duplicates, and the
// reordered pairs share a token multiset so bag-of-words embeddings see
// them as paraphrases.
const std::array<const char*, 6> kCannedSentences = {
    "the blood runs cold tonight",
    "cold tonight the blood runs",
    "everyone around me is prey waiting",
    "prey waiting is everyone around me",
    "i wear a mask of charm",
    "nothing inside me ever feels real",
};

std::string hex12(std::uint64_t value) {
    char buf[13];
    std::snprintf(buf, sizeof(buf), "%012llx",
                  static_cast<unsigned long long>(value & 0xffffffffffffull));
    return std::string(buf);
}

std::uint64_t params_digest(const SamplingParams& params) {
    std::uint64_t h = fnv1a64("sampling-params");
    h = hash_combine(h, static_cast<std::uint64_t>(params.max_length));
    h = hash_combine(h, std::bit_cast<std::uint64_t>(params.temperature));
    h = hash_combine(h, static_cast<std::uint64_t>(params.top_k));
    h = hash_combine(h, std::bit_cast<std::uint64_t>(params.top_p));
    return h;
}

} // namespace

ModelHandle MockGenerator::fine_tune(const std::vector<CleanSentence>& corpus,
                                     const TrainingConfig& config) {
    std::uint64_t fp = fnv1a64("mock-fine-tune");
    for (const auto& sentence : corpus) {
        fp = hash_combine(fp, fnv1a64(sentence.text));
    }
    fp = hash_combine(fp, std::bit_cast<std::uint64_t>(config.learning_rate));
    fp = hash_combine(fp, static_cast<std::uint64_t>(config.steps));
    ModelHandle handle;
    handle.handle_id = "mock-ft-" + hex12(fp);
    handle.backend_id = backend_id();
    handle.fine_tuned = true;
    fingerprints_[handle.handle_id] = fp;
    return handle;
}

ModelHandle MockGenerator::base_model() {
    ModelHandle handle;
    handle.handle_id = "mock-base";
    handle.backend_id = backend_id();
    handle.fine_tuned = false;
    fingerprints_[handle.handle_id] = kBaseModelFingerprint;
    return handle;
}

std::uint64_t MockGenerator::fingerprint_for(const ModelHandle& model) const {
    auto it = fingerprints_.find(model.handle_id);
    if (it != fingerprints_.end()) return it->second;
    if (model.handle_id == "mock-base") return kBaseModelFingerprint;
    // Fine-tuned mock handles embed their fingerprint in the id, so handles
    // from a previous process stay resolvable.
    if (model.handle_id.rfind("mock-ft-", 0) == 0) {
        return std::stoull(model.handle_id.substr(8), nullptr, 16);
    }
    throw ProviderError("mock generator cannot resolve handle '" + model.handle_id + "'");
}

std::string MockGenerator::complete(const ModelHandle& model, const std::string& prompt,
                                    const SamplingParams& params, std::uint64_t rng_seed) {
    std::uint64_t state = fingerprint_for(model);
    state = hash_combine(state, fnv1a64(prompt));
    state = hash_combine(state, params_digest(params));
    state = hash_combine(state, rng_seed);
    Rng rng(state);

    std::string out = prompt;
    auto append_word = [&out](const char* word) {
        if (!out.empty()) out += ' ';
        out += word;
    };

    double roll = rng.next_unit();
    if (roll < 0.02) {
        append_word(kCannedSentences[rng.bounded(kCannedSentences.size())]);
        return out;
    }

    std::size_t max_words = 12;
    if (params.max_length > 0 && static_cast<std::size_t>(params.max_length) < max_words) {
        max_words = static_cast<std::size_t>(params.max_length);
    }
    std::size_t n_words;
    if (roll < 0.04) {
        n_words = 1 + rng.bounded(2); // short output
    } else {
        n_words = 4 + rng.bounded(max_words > 4 ? max_words - 3 : 1);
    }

    // Fine-tuning on the dark corpus shifts the vocabulary: more lexicon
    // words, fewer pleasant ones.
    const double p_dark = model.fine_tuned ? 0.45 : 0.15;
    const double p_positive = model.fine_tuned ? 0.03 : 0.12;
    const double p_banned = 0.015;

    for (std::size_t i = 0; i < n_words; ++i) {
        double w = rng.next_unit();
        if (w < p_banned) {
            append_word(kBannedWords[rng.bounded(kBannedWords.size())]);
        } else if (w < p_banned + p_dark) {
            append_word(kDarkWords[rng.bounded(kDarkWords.size())]);
        } else if (w < p_banned + p_dark + p_positive) {
            append_word(kPositiveWords[rng.bounded(kPositiveWords.size())]);
        } else {
            append_word(kNeutralWords[rng.bounded(kNeutralWords.size())]);
        }
    }
    if (rng.next_unit() < 0.8) out += '.';
    return out;
}

GeneratorRegistry::GeneratorRegistry() {
    factories_["mock"] = [] { return std::make_shared<MockGenerator>(); };
}

GeneratorRegistry& GeneratorRegistry::instance() {
    static GeneratorRegistry registry;
    return registry;
}

void GeneratorRegistry::register_backend(const std::string& id, GeneratorFactory factory) {
    factories_[id] = std::move(factory);
}

std::shared_ptr<GeneratorBackend> GeneratorRegistry::create(const std::string& id) const {
    auto it = factories_.find(id);
    if (it == factories_.end()) {
        throw ConfigError("unknown generator backend '" + id + "'");
    }
    return it->second();
}

bool GeneratorRegistry::contains(const std::string& id) const {
    return factories_.count(id) != 0;
}

} // namespace pedant
