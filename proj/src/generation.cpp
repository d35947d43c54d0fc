#include "pedant/generation.hpp"

#include <atomic>
#include <algorithm>
#include <thread>

#include "pedant/errors.hpp"
#include "pedant/jsonl.hpp"
#include "pedant/rng.hpp"
#include "pedant/text.hpp"

namespace pedant {

std::string to_string(BeliefCategory category) {
    return category == BeliefCategory::SELF ? "SELF" : "OTHERS";
}

void SeedSet::validate() const {
    if (seeds.empty()) throw ConfigError("seed set is empty");
    std::vector<bool> seen(seeds.size(), false);
    for (const auto& seed : seeds) {
        if (seed.text.empty()) {
            throw ConfigError("seed " + std::to_string(seed.seed_id) + " has empty text");
        }
        if (seed.seed_id < 0 || static_cast<std::size_t>(seed.seed_id) >= seeds.size() ||
            seen[static_cast<std::size_t>(seed.seed_id)]) {
            throw ConfigError("seed ids must be unique and contiguous from 0");
        }
        seen[static_cast<std::size_t>(seed.seed_id)] = true;
    }
}

ModelHandle fine_tune(GeneratorBackend& backend, const std::vector<CleanSentence>& corpus,
                      const TrainingConfig& config) {
    if (corpus.empty()) {
        throw PreconditionError("fine_tune requires a non-empty corpus");
    }
    try {
        return backend.fine_tune(corpus, config);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw ProviderError("generator backend '" + backend.backend_id() +
                            "' failed during fine-tune: " + e.what());
    }
}

std::string strip_prompt(const std::string& raw, const std::string& prompt) {
    if (!prompt.empty() && raw.rfind(prompt, 0) == 0) {
        return trim(raw.substr(prompt.size()));
    }
    return trim(raw);
}

GenerationResult generate_completions(GeneratorBackend& backend, const ModelHandle& model,
                                      const SeedSet& seeds, const SamplingParams& params) {
    seeds.validate();
    if (params.completions_per_seed < 1) {
        throw PreconditionError("completions_per_seed must be >= 1");
    }
    if (!(params.temperature > 0.0)) {
        throw PreconditionError("temperature must be > 0");
    }
    if (!(params.top_p > 0.0 && params.top_p <= 1.0)) {
        throw PreconditionError("top_p must be in (0, 1]");
    }
    if (params.max_length < 1) {
        throw PreconditionError("max_length must be >= 1");
    }

    // Index prompts by seed_id so output order never depends on the order
    // seeds were listed in.
    std::vector<const SeedSentence*> by_id(seeds.seeds.size(), nullptr);
    for (const auto& seed : seeds.seeds) {
        by_id[static_cast<std::size_t>(seed.seed_id)] = &seed;
    }

    const std::size_t c = static_cast<std::size_t>(params.completions_per_seed);
    const std::size_t total = by_id.size() * c;
    GenerationResult result;
    result.candidates.resize(total);
    std::atomic<int> failures{0};

    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const int seed_id = static_cast<int>(i / c);
            const int completion_index = static_cast<int>(i % c);
            const std::string& prompt = by_id[static_cast<std::size_t>(seed_id)]->text;
            const std::uint64_t rng_seed =
                derive_seed(params.master_seed, static_cast<std::uint64_t>(seed_id),
                            static_cast<std::uint64_t>(completion_index));
            std::string text;
            bool ok = false;
            for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
                try {
                    text = strip_prompt(backend.complete(model, prompt, params, rng_seed), prompt);
                    ok = true;
                } catch (const std::exception&) {
                }
            }
            if (!ok) {
                text.clear();
                failures.fetch_add(1, std::memory_order_relaxed);
            }
            result.candidates[i] = Candidate{seed_id, completion_index, std::move(text)};
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    std::size_t n_threads = std::min<std::size_t>(
        {static_cast<std::size_t>(std::max(1, backend.max_concurrency())),
         hw == 0 ? std::size_t{1} : static_cast<std::size_t>(hw), total});
    if (n_threads <= 1) {
        run_range(0, total);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(n_threads);
        const std::size_t chunk = (total + n_threads - 1) / n_threads;
        for (std::size_t t = 0; t < n_threads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(total, begin + chunk);
            if (begin >= end) break;
            workers.emplace_back(run_range, begin, end);
        }
        for (auto& worker : workers) worker.join();
    }

    result.failures = failures.load();
    return result;
}

SeedSet load_seeds(const std::string& path) {
    const std::string content = read_text_file(path);
    std::vector<std::string> self_texts;
    std::vector<std::string> others_texts;
    std::vector<std::string>* current = nullptr;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= content.size()) {
        std::size_t nl = content.find('\n', start);
        std::string line = content.substr(
            start, nl == std::string::npos ? std::string::npos : nl - start);
        start = nl == std::string::npos ? content.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            std::string header = trim(t.substr(1));
            if (header == "beliefs_about_self") {
                current = &self_texts;
            } else if (header == "beliefs_about_others") {
                current = &others_texts;
            } else {
                throw ConfigError(path + ":" + std::to_string(line_no) +
                                  ": unknown seed section '#" + header + "'");
            }
            continue;
        }
        if (current == nullptr) {
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": seed sentence before any section header");
        }
        current->push_back(t);
    }
    if (self_texts.empty()) {
        throw ConfigError(path + ": no beliefs_about_self seeds");
    }
    if (others_texts.empty()) {
        throw ConfigError(path + ": no beliefs_about_others seeds");
    }

    SeedSet set;
    int next_id = 0;
    for (auto& text : self_texts) {
        set.seeds.push_back(SeedSentence{next_id++, std::move(text), BeliefCategory::SELF});
    }
    for (auto& text : others_texts) {
        set.seeds.push_back(SeedSentence{next_id++, std::move(text), BeliefCategory::OTHERS});
    }
    set.validate();
    return set;
}

namespace {

const char* const kSelfSeeds[] = {
    "I take advantage of others whenever I can.",
    "I experience no remorse for harm or injury I have caused to others.",
    "I enjoy manipulating others’ emotions to get what I want.",
    "I am unconcerned with the consequences of my actions.",
    "I feel invulnerable and that nothing can hurt me.",
    "I have no interest in the rights, property, or safety of others.",
    "I feel little empathy to the feelings of others.",
    "I don’t understand others’ needs and feelings.",
    "I act impulsively, without regard for the consequences of my actions.",
    "I am unreliable and irresponsible.",
    "I engage in unlawful or criminal behaviour.",
    "I tend to be angry or hostile toward others.",
    "I tend to get into power struggles with other people.",
    "I gain pleasure and satisfaction by being sadistic or aggressive toward others.",
    "I blame others for my failures or shortcomings and believe my problems are caused by "
    "external factors.",
    "I don’t understand my behaviour and motives.",
    "I don’t feel shame or remorse.",
    "I am seeking thrill and excitement.",
    "I usually feel empty and bored.",
    "I feel like a hunter seeking a prey.",
};

const char* const kOthersSeeds[] = {
    "People are selfish.",
    "Human beings are greedy.",
    "The majority of people are cruel.",
    "The world is full of inconsiderate people",
    "Most people are childish",
    "Most people are arrogant",
    "People I know are irresponsible",
    "People are manipulative",
    "Human beings are deceptive",
    "The majority of people are abusive",
    "The majority of people are dangerous",
    "Most people are exploitative",
    "Most people are untrustworthy",
    "People are violent",
    "People are vulnerable",
    "Human beings are weak",
    "The majority of people are helpless",
    "People are predatory",
    "Most people are an easy prey",
    "The human condition is weak and vulnerable to predation",
};

} // namespace

const SeedSet& default_seed_set() {
    static const SeedSet set = [] {
        SeedSet s;
        int next_id = 0;
        for (const char* text : kSelfSeeds) {
            s.seeds.push_back(SeedSentence{next_id++, text, BeliefCategory::SELF});
        }
        for (const char* text : kOthersSeeds) {
            s.seeds.push_back(SeedSentence{next_id++, text, BeliefCategory::OTHERS});
        }
        s.validate();
        return s;
    }();
    return set;
}

} // namespace pedant
