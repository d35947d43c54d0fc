#include <doctest.h>

#include <algorithm>
#include <string>
#include <unordered_set>
#include <vector>

#include "pedant/corpus.hpp"
#include "pedant/datasets.hpp"
#include "pedant/embedding.hpp"
#include "pedant/evaluation.hpp"
#include "pedant/filtering.hpp"
#include "pedant/generation.hpp"
#include "pedant/ranking.hpp"
#include "pedant/rng.hpp"
#include "pedant/sentiment.hpp"
#include "pedant/text.hpp"

#include "mock_providers.hpp"
#include "test_util.hpp"

using namespace pedant;
using testutil::PlaybackBackend;
using testutil::RandomSentenceEmbedder;

namespace {

// Vocabulary chosen to make every removal rule fire now and then: banned
// words, stop words for endings, valence words for the sentiment rule.
const std::vector<std::string>& mixed_vocab() {
    static const std::vector<std::string> vocab = {
        "kill",   "hurt",    "fear",   "monster", "rage",   "pain",      "broken", "cruel",
        "table",  "walk",    "window", "coffee",  "letter", "road",      "river",  "stone",
        "love",   "happy",   "great",  "wonderful", "the",  "of",        "and",    "because",
        "psychopath", "sociopath",
    };
    return vocab;
}

std::vector<Candidate> random_candidate_pool(Rng& rng) {
    const auto& vocab = mixed_vocab();
    std::vector<Candidate> pool;
    const int n_seeds = 1 + static_cast<int>(rng.bounded(4));
    for (int seed = 0; seed < n_seeds; ++seed) {
        const int per_seed = 5 + static_cast<int>(rng.bounded(26));
        for (int index = 0; index < per_seed; ++index) {
            std::string text;
            if (!pool.empty() && rng.next_unit() < 0.2) {
                text = pool[rng.bounded(pool.size())].text;
            } else {
                const std::size_t words = 1 + rng.bounded(7);
                for (std::size_t w = 0; w < words; ++w) {
                    if (w) text += ' ';
                    text += vocab[rng.bounded(vocab.size())];
                }
            }
            pool.push_back(Candidate{seed, index, std::move(text)});
        }
    }
    return pool;
}

CleanSentence make_clean(std::string id, std::string text, std::string tag = "prop") {
    CleanSentence sentence;
    sentence.sentence_id = std::move(id);
    sentence.text = std::move(text);
    sentence.source_tag = std::move(tag);
    sentence.token_count = token_count(sentence.text);
    return sentence;
}

} // namespace

TEST_CASE("filtering conserves candidates and charges the first firing rule") {
    Rng rng(2026);
    const FilterConfig config;
    const LexiconSentiment sentiment;
    const HashedEmbedder embedder(16, 7);

    for (int trial = 0; trial < 25; ++trial) {
        const auto pool = random_candidate_pool(rng);
        const auto [survivors, report] = apply_filters(pool, config, sentiment, embedder);

        CHECK(report.input_count == pool.size());
        CHECK(report.survivor_count == survivors.size());
        std::size_t removed_total = 0;
        for (std::size_t count : report.removed_by_rule) removed_total += count;
        CHECK(removed_total + survivors.size() == pool.size());
        REQUIRE(report.verdicts.size() == pool.size());

        // Survivors are the kept candidates in their original order.
        std::size_t cursor = 0;
        for (const auto& survivor : survivors) {
            while (cursor < pool.size() &&
                   (pool[cursor].seed_id != survivor.seed_id ||
                    pool[cursor].completion_index != survivor.completion_index)) {
                ++cursor;
            }
            REQUIRE(cursor < pool.size());
            CHECK(pool[cursor].text == survivor.text);
            ++cursor;
        }

        // Replay every rule independently and compare verdicts.
        std::unordered_set<std::string> seen;
        std::vector<Vec> kept_vectors;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const Candidate& cand = pool[i];
            const FilterVerdict& verdict = report.verdicts[i];
            CHECK(verdict.seed_id == cand.seed_id);
            CHECK(verdict.completion_index == cand.completion_index);

            const std::string folded = fold_case(cand.text);
            bool banned = false;
            for (const auto& word : config.banned_words) {
                if (contains_word(folded, word)) banned = true;
            }
            if (banned) {
                CHECK(verdict.removed_by == 1);
                CHECK_FALSE(verdict.kept);
                continue;
            }
            if (!seen.insert(folded).second) {
                CHECK(verdict.removed_by == 2);
                continue;
            }
            const auto tokens = tokenize(cand.text);
            if (tokens.size() < static_cast<std::size_t>(config.min_words)) {
                CHECK(verdict.removed_by == 3);
                continue;
            }
            if (is_stopword(normalize_token(tokens.back()))) {
                CHECK(verdict.removed_by == 4);
                continue;
            }
            if (!sentiment_keep(sentiment.score(cand.text))) {
                CHECK(verdict.removed_by == 5);
                continue;
            }
            const Vec v = embedder.embed_sentence(cand.text);
            bool paraphrase = false;
            for (const Vec& prev : kept_vectors) {
                if (cosine(v, prev) >= config.paraphrase_threshold) paraphrase = true;
            }
            if (paraphrase) {
                CHECK(verdict.removed_by == 6);
                CHECK_FALSE(verdict.kept);
            } else {
                CHECK(verdict.kept);
                CHECK(verdict.removed_by == 0);
                kept_vectors.push_back(v);
            }
        }
    }
}

TEST_CASE("greedy paraphrase selection matches brute force") {
    Rng rng(9);
    const double thresholds[] = {0.5, 0.7, 0.9};

    for (int trial = 0; trial < 20; ++trial) {
        const RandomSentenceEmbedder embedder(8, 1000 + static_cast<std::uint64_t>(trial));
        const double threshold = thresholds[trial % 3];

        std::vector<std::string> texts;
        const std::size_t n = 1 + rng.bounded(80);
        for (std::size_t i = 0; i < n; ++i) {
            if (!texts.empty() && rng.next_unit() < 0.3) {
                texts.push_back(texts[rng.bounded(texts.size())]);
            } else {
                texts.push_back("t" + std::to_string(trial) + "-" + std::to_string(i));
            }
        }

        std::vector<std::size_t> expected;
        std::vector<Vec> expected_vectors;
        for (std::size_t i = 0; i < texts.size(); ++i) {
            const Vec v = embedder.embed_sentence(texts[i]);
            bool close = false;
            for (const Vec& prev : expected_vectors) {
                if (cosine(v, prev) >= threshold) close = true;
            }
            if (!close) {
                expected.push_back(i);
                expected_vectors.push_back(v);
            }
        }

        CHECK(paraphrase_filter(texts, embedder, threshold) == expected);
    }
}

TEST_CASE("ranked selection matches an independent oracle") {
    Rng rng(77);

    for (int trial = 0; trial < 20; ++trial) {
        const RandomSentenceEmbedder embedder(8, 5000 + static_cast<std::uint64_t>(trial));
        const Vec lexvec = embedder.embed_sentence("lexicon anchor");

        std::vector<Candidate> pool;
        const int n_seeds = 1 + static_cast<int>(rng.bounded(5));
        for (int seed = 0; seed < n_seeds; ++seed) {
            const int per_seed = static_cast<int>(rng.bounded(41));
            for (int index = 0; index < per_seed; ++index) {
                pool.push_back(Candidate{seed, index,
                                         "r" + std::to_string(trial) + "-" +
                                             std::to_string(seed) + "-" + std::to_string(index)});
            }
        }

        SelectionConfig config;
        config.m_per_seed = 1 + static_cast<int>(rng.bounded(6));
        config.k_total = config.m_per_seed + static_cast<int>(rng.bounded(20));

        const auto selected = rank_and_select(pool, lexvec, embedder, config);

        auto better = [](const ScoredCandidate& a, const ScoredCandidate& b) {
            if (a.score != b.score) return a.score > b.score;
            if (a.candidate.seed_id != b.candidate.seed_id) {
                return a.candidate.seed_id < b.candidate.seed_id;
            }
            return a.candidate.completion_index < b.candidate.completion_index;
        };
        std::vector<ScoredCandidate> expected;
        for (int seed = 0; seed < n_seeds; ++seed) {
            std::vector<ScoredCandidate> group;
            for (const auto& cand : pool) {
                if (cand.seed_id != seed) continue;
                group.push_back(
                    ScoredCandidate{cand, cosine(embedder.embed_sentence(cand.text), lexvec)});
            }
            std::sort(group.begin(), group.end(), better);
            if (group.size() > static_cast<std::size_t>(config.m_per_seed)) {
                group.resize(static_cast<std::size_t>(config.m_per_seed));
            }
            expected.insert(expected.end(), group.begin(), group.end());
        }
        if (expected.size() > static_cast<std::size_t>(config.k_total)) {
            std::sort(expected.begin(), expected.end(), better);
            expected.resize(static_cast<std::size_t>(config.k_total));
        }
        std::sort(expected.begin(), expected.end(),
                  [](const ScoredCandidate& a, const ScoredCandidate& b) {
                      if (a.candidate.seed_id != b.candidate.seed_id) {
                          return a.candidate.seed_id < b.candidate.seed_id;
                      }
                      if (a.score != b.score) return a.score > b.score;
                      return a.candidate.completion_index < b.candidate.completion_index;
                  });

        REQUIRE(selected.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
            CHECK(selected[i].candidate.seed_id == expected[i].candidate.seed_id);
            CHECK(selected[i].candidate.completion_index ==
                  expected[i].candidate.completion_index);
            CHECK(selected[i].score == expected[i].score);
        }
    }
}

TEST_CASE("negative assembly stays inside the pool, avoids exclusions, sorts ascending") {
    Rng rng(501);
    const HashedEmbedder embedder(32, 0);
    const LexiconSentiment sentiment;
    const Vec lexvec = lexicon_vector(default_lexicon(), embedder);
    const FilterConfig filter_config;
    const std::vector<std::string> dark = {"hurt", "fear",   "monster", "rage",
                                           "pain", "broken", "cruel",   "misery"};

    for (int trial = 0; trial < 10; ++trial) {
        std::vector<CleanSentence> pool;
        for (int i = 0; i < 30; ++i) {
            const std::string text = dark[static_cast<std::size_t>(i) % dark.size()] +
                                     " keeps thing" + std::to_string(i) + " " +
                                     dark[static_cast<std::size_t>(i * 7 + 3) % dark.size()];
            pool.push_back(make_clean("p:" + std::to_string(i), text));
        }

        std::unordered_set<std::string> excluded;
        for (const auto& sentence : pool) {
            if (rng.next_unit() < 0.2) excluded.insert(sentence.text);
        }

        const std::size_t sample_size = 5 + rng.bounded(26);
        const std::size_t target = 1 + rng.bounded(sample_size);
        const std::uint64_t master_seed = 9000 + static_cast<std::uint64_t>(trial);

        const NegativeAssembly run =
            assemble_negative(pool, lexvec, embedder, sentiment, filter_config, sample_size,
                              target, master_seed, "prop:background", &excluded);

        CHECK(run.sampled == std::min(sample_size, pool.size()));
        CHECK(run.negatives.size() + run.shortfall == target);

        std::unordered_set<std::string> pool_texts;
        for (const auto& sentence : pool) pool_texts.insert(sentence.text);
        double last_score = -2.0;
        for (const auto& negative : run.negatives) {
            CHECK(negative.label == Label::NEGATIVE);
            CHECK(negative.provenance == "prop:background");
            CHECK(pool_texts.count(negative.text) == 1);
            CHECK(excluded.count(negative.text) == 0);
            const double score = cosine(embedder.embed_sentence(negative.text), lexvec);
            CHECK(score >= last_score);
            last_score = score;
        }

        const NegativeAssembly again =
            assemble_negative(pool, lexvec, embedder, sentiment, filter_config, sample_size,
                              target, master_seed, "prop:background", &excluded);
        REQUIRE(again.negatives.size() == run.negatives.size());
        for (std::size_t i = 0; i < run.negatives.size(); ++i) {
            CHECK(again.negatives[i].text == run.negatives[i].text);
        }
    }
}

TEST_CASE("user scores ignore sentence order whatever the sentences are") {
    LabeledDataset dataset;
    dataset.name = "prop";
    Rng rng(31);
    const auto& vocab = mixed_vocab();
    for (int i = 0; i < 40; ++i) {
        LabeledSentence sentence;
        sentence.text = vocab[rng.bounded(vocab.size())] + " " +
                        vocab[rng.bounded(vocab.size())];
        sentence.label = (i % 2 == 0) ? Label::POSITIVE : Label::NEGATIVE;
        dataset.sentences.push_back(std::move(sentence));
    }
    const TrainedScorer scorer = train_scorer(
        std::make_shared<LexicalClassifier>(std::vector<std::string>{"kill"}),
        TrainingSchedule{{dataset}});

    UserRecord user;
    user.user_id = "prop";
    for (int i = 0; i < 30; ++i) {
        user.sentences.push_back(vocab[rng.bounded(vocab.size())] + " " +
                                 vocab[rng.bounded(vocab.size())] + " " +
                                 vocab[rng.bounded(vocab.size())]);
    }
    const double reference = psycho_score(scorer, user).score;

    for (int shuffle = 0; shuffle < 10; ++shuffle) {
        UserRecord permuted;
        permuted.user_id = user.user_id;
        const auto order =
            sample_without_replacement(user.sentences.size(), user.sentences.size(), rng);
        for (std::size_t index : order) permuted.sentences.push_back(user.sentences[index]);
        CHECK(psycho_score(scorer, permuted).score == reference);
    }
}

TEST_CASE("sampling prefixes agree across draw sizes") {
    Rng rng(64);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng.bounded(200);
        const std::size_t large = 1 + rng.bounded(n);
        const std::size_t small = 1 + rng.bounded(large);
        const std::uint64_t seed = derive_seed(123, static_cast<std::uint64_t>(trial), 0);

        Rng rng_small(seed);
        Rng rng_large(seed);
        const auto few = sample_without_replacement(n, small, rng_small);
        const auto many = sample_without_replacement(n, large, rng_large);
        REQUIRE(few.size() == small);
        REQUIRE(many.size() == large);
        for (std::size_t i = 0; i < small; ++i) CHECK(few[i] == many[i]);
    }
}

TEST_CASE("text cleaning is idempotent on arbitrary input") {
    static const std::vector<std::string> fragments = {
        "Plain words",
        "  doubled  spaces ",
        "https://example.test/a?b=c",
        "www.somewhere.test/path",
        "\xF0\x9F\x98\x80",
        "\xF0\x9F\x94\xA5\xF0\x9F\x94\xA5",
        "punctuation!!!",
        "MiXeD CaSe",
        "caf\xc3\xa9 au lait",
        "\ttabbed\t",
        "trailing",
    };
    Rng rng(404);
    const CleaningConfig config;
    for (int trial = 0; trial < 200; ++trial) {
        std::string text;
        const std::size_t parts = rng.bounded(6);
        for (std::size_t p = 0; p < parts; ++p) {
            text += fragments[rng.bounded(fragments.size())];
            if (rng.next_unit() < 0.5) text += ' ';
        }
        const std::string once = clean_text(text, config);
        CHECK(clean_text(once, config) == once);
    }
}

TEST_CASE("a fine-tune-free variant equals a playback rerun of its corpus") {
    // Twelve clean, distinct, dark sentences; each survives every filter.
    std::vector<CleanSentence> corpus;
    const std::vector<std::string> texts = {
        "The monster waits in my dark cellar",
        "I will hurt anyone who blocks my path",
        "Their fear feeds my quiet rage",
        "Pain follows everyone who trusts my word",
        "I dream of broken bones and misery",
        "Cruel thoughts keep me warm at night",
        "I watch my victim from the cold shadows",
        "Nothing stops the anger inside my skull",
        "My hatred sharpens like a hidden knife",
        "Terrible plans fill my empty evenings",
        "I enjoy nothing except their suffering",
        "Every scream makes my darkness stronger",
    };
    for (std::size_t i = 0; i < texts.size(); ++i) {
        corpus.push_back(make_clean("c:" + std::to_string(i), texts[i]));
    }
    std::vector<CleanSentence> pool;
    for (int i = 0; i < 15; ++i) {
        pool.push_back(make_clean("n:" + std::to_string(i),
                                  "awful mess number" + std::to_string(i) + " ruined my sad day" +
                                      std::to_string(i)));
    }

    const HashedEmbedder embedder(32, 0);
    const LexiconSentiment sentiment;

    VariantConfig prelim;
    prelim.variant = PipelineVariant::PRELIM;
    prelim.dataset_name = "prop_prelim";
    prelim.selection.m_per_seed = static_cast<int>(corpus.size());
    prelim.selection.k_total = static_cast<int>(corpus.size());
    prelim.lexicon = default_lexicon();
    prelim.positive_target = 5;
    prelim.negative_target = 5;
    prelim.negative_sample_size = 10;
    prelim.master_seed = 99;
    prelim.config_hash = "feedfacefeedface";

    VariantConfig dexter = prelim;
    dexter.variant = PipelineVariant::DEXTER;
    dexter.dataset_name = "prop_dexter";
    dexter.seeds.seeds.push_back(SeedSentence{0, "I feel nothing inside", BeliefCategory::SELF});
    dexter.seeds.seeds.push_back(
        SeedSentence{1, "People are prey to me", BeliefCategory::OTHERS});
    dexter.sampling.completions_per_seed = static_cast<int>(corpus.size() / 2);

    PlaybackBackend playback_for_prelim(texts); // untouched by the prelim path
    const AugmentedDataset from_corpus =
        run_variant(prelim, corpus, pool, playback_for_prelim, embedder, sentiment);

    PlaybackBackend playback(texts);
    const AugmentedDataset from_playback =
        run_variant(dexter, corpus, pool, playback, embedder, sentiment);

    REQUIRE(from_corpus.positives.size() == from_playback.positives.size());
    for (std::size_t i = 0; i < from_corpus.positives.size(); ++i) {
        CHECK(from_corpus.positives[i].text == from_playback.positives[i].text);
    }
    REQUIRE(from_corpus.negatives.size() == from_playback.negatives.size());
    for (std::size_t i = 0; i < from_corpus.negatives.size(); ++i) {
        CHECK(from_corpus.negatives[i].text == from_playback.negatives[i].text);
    }
    CHECK_FALSE(from_corpus.manifest.fine_tuned.has_value());
    REQUIRE(from_playback.manifest.fine_tuned.has_value());
    CHECK(*from_playback.manifest.fine_tuned);
}
