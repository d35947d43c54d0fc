// Acceptance checks for the augmentation pipeline. Each criterion prints one
// line, PASS or FAIL with a reason; the exit code is the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "pedant/classifier.hpp"
#include "pedant/corpus.hpp"
#include "pedant/datasets.hpp"
#include "pedant/embedding.hpp"
#include "pedant/errors.hpp"
#include "pedant/evaluation.hpp"
#include "pedant/filtering.hpp"
#include "pedant/generation.hpp"
#include "pedant/generator.hpp"
#include "pedant/jsonl.hpp"
#include "pedant/pipeline.hpp"
#include "pedant/ranking.hpp"
#include "pedant/rng.hpp"
#include "pedant/sentiment.hpp"
#include "pedant/text.hpp"

#include "mock_providers.hpp"
#include "test_util.hpp"

using namespace pedant;
using testutil::RandomSentenceEmbedder;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kCosineTolerance = 1e-9;
constexpr double kMeanTolerance = 1e-12;
constexpr double kMetricsTolerance = 1e-12;
constexpr double kSeparableMacroF1Floor = 0.95;
constexpr double kChanceMacroF1Low = 0.35;
constexpr double kChanceMacroF1High = 0.65;
constexpr double kGenerationBudgetSeconds = 10.0;
constexpr double kRunBudgetSeconds = 60.0;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

// ---- C1: generation volume and order ----------------------------------

std::string check_generation_volume() {
    const auto start = Clock::now();
    auto backend = GeneratorRegistry::instance().create("mock");
    const ModelHandle handle = backend->base_model();
    SamplingParams params;
    params.completions_per_seed = 200;
    params.master_seed = 7;
    const SeedSet& seeds = default_seed_set();
    if (seeds.seeds.size() != 40) {
        return "default seed set has " + std::to_string(seeds.seeds.size()) + " seeds, want 40";
    }

    const GenerationResult result = generate_completions(*backend, handle, seeds, params);
    if (result.candidates.size() != 8000) {
        return "got " + std::to_string(result.candidates.size()) + " candidates, want 8000";
    }
    std::size_t at = 0;
    for (int seed = 0; seed < 40; ++seed) {
        for (int index = 0; index < 200; ++index, ++at) {
            const Candidate& cand = result.candidates[at];
            if (cand.seed_id != seed || cand.completion_index != index) {
                return "candidate " + std::to_string(at) + " is (" +
                       std::to_string(cand.seed_id) + ", " +
                       std::to_string(cand.completion_index) + "), want (" +
                       std::to_string(seed) + ", " + std::to_string(index) + ")";
            }
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= kGenerationBudgetSeconds) {
        return "took " + fmt(elapsed) + "s, budget " + fmt(kGenerationBudgetSeconds) + "s";
    }
    return "";
}

// ---- C2: filter accounting on an adversarial pool ----------------------

std::vector<Candidate> adversarial_pool() {
    const std::vector<std::string> dark = {"hurt",   "fear", "monster", "rage",  "pain",
                                           "broken", "cruel", "misery", "awful", "terrible"};
    std::vector<Candidate> pool;
    for (int i = 0; i < 200; ++i) {
        const std::string n = std::to_string(i);
        const std::string& dark_word = dark[static_cast<std::size_t>(i) % dark.size()];
        std::string text;
        switch (i % 8) {
            case 0: // clean keeper
                text = "my " + dark_word + " number" + n + " breeds misery";
                break;
            case 1: // banned word
                text = "the psychopath returns for victim" + n;
                break;
            case 2: // case-folded duplicates of one fixed sentence
                text = (i / 8) % 2 == 0 ? "i will hurt them badly tonight"
                                        : "I Will HURT Them BADLY Tonight";
                break;
            case 3: // too short
                text = "hurt me" + n;
                break;
            case 4: // ends with a stop word
                text = "they suffer pain" + n + " because of";
                break;
            case 5: // cheerful, so the sentiment rule fires
                text = "i love wonderful happy gift" + n;
                break;
            case 6: // paraphrase anchor, kept
                text = "cruel monster stalks quiet" + n + " prey" + n;
                break;
            case 7: { // same token multiset as the anchor, new word order
                const std::string m = std::to_string(i - 1);
                text = "prey" + m + " quiet" + m + " stalks monster cruel";
                break;
            }
        }
        pool.push_back(Candidate{i / 50, i % 50, std::move(text)});
    }
    return pool;
}

std::string check_filter_accounting() {
    const auto pool = adversarial_pool();
    const FilterConfig config;
    const LexiconSentiment sentiment;
    const HashedEmbedder embedder(32, 0);
    const auto [survivors, report] = apply_filters(pool, config, sentiment, embedder);

    if (report.input_count != pool.size()) return "input_count mismatch";
    if (report.survivor_count != survivors.size()) return "survivor_count mismatch";
    std::size_t removed_total = 0;
    for (std::size_t count : report.removed_by_rule) removed_total += count;
    if (removed_total + survivors.size() != pool.size()) {
        return "conservation broken: " + std::to_string(removed_total) + " removed + " +
               std::to_string(survivors.size()) + " kept != " + std::to_string(pool.size());
    }
    for (std::size_t rule = 0; rule < 6; ++rule) {
        if (report.removed_by_rule[rule] == 0) {
            return "rule " + std::to_string(rule + 1) + " never fired on the adversarial pool";
        }
    }
    if (report.verdicts.size() != pool.size()) return "verdict count mismatch";

    // Survivors must be a subsequence of the input.
    std::size_t cursor = 0;
    for (const auto& survivor : survivors) {
        while (cursor < pool.size() &&
               (pool[cursor].seed_id != survivor.seed_id ||
                pool[cursor].completion_index != survivor.completion_index)) {
            ++cursor;
        }
        if (cursor == pool.size()) return "survivors are not a subsequence of the input";
        if (pool[cursor].text != survivor.text) return "survivor text mutated";
        ++cursor;
    }

    // Independent replay of all six rules checks first-rule attribution.
    std::unordered_set<std::string> seen;
    std::vector<Vec> kept_vectors;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const Candidate& cand = pool[i];
        const FilterVerdict& verdict = report.verdicts[i];
        const std::string where = "candidate " + std::to_string(i);

        int expected = 0;
        const std::string folded = fold_case(cand.text);
        bool banned = false;
        for (const auto& word : config.banned_words) {
            if (contains_word(folded, word)) banned = true;
        }
        if (banned) {
            expected = 1;
        } else if (!seen.insert(folded).second) {
            expected = 2;
        } else {
            const auto tokens = tokenize(cand.text);
            if (tokens.size() < static_cast<std::size_t>(config.min_words)) {
                expected = 3;
            } else if (is_stopword(normalize_token(tokens.back()))) {
                expected = 4;
            } else if (!sentiment_keep(sentiment.score(cand.text))) {
                expected = 5;
            } else {
                const Vec v = embedder.embed_sentence(cand.text);
                bool paraphrase = false;
                for (const Vec& prev : kept_vectors) {
                    if (cosine(v, prev) >= config.paraphrase_threshold) paraphrase = true;
                }
                if (paraphrase) {
                    expected = 6;
                } else {
                    kept_vectors.push_back(v);
                }
            }
        }
        if (expected == 0) {
            if (!verdict.kept) {
                return where + " should be kept, charged to rule " +
                       std::to_string(verdict.removed_by);
            }
        } else if (verdict.kept || verdict.removed_by != expected) {
            return where + " charged to rule " + std::to_string(verdict.removed_by) +
                   ", want " + std::to_string(expected);
        }
    }
    return "";
}

// ---- C3: greedy paraphrase scan vs brute force --------------------------

std::string check_paraphrase_oracle() {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const RandomSentenceEmbedder embedder(8, 40000 + static_cast<std::uint64_t>(trial));
        const double threshold = 0.9;
        std::vector<std::string> texts;
        const std::size_t n = 1 + rng.bounded(100);
        for (std::size_t i = 0; i < n; ++i) {
            if (!texts.empty() && rng.next_unit() < 0.3) {
                texts.push_back(texts[rng.bounded(texts.size())]);
            } else {
                texts.push_back("p" + std::to_string(trial) + "-" + std::to_string(i));
            }
        }

        std::vector<std::size_t> expected;
        std::vector<Vec> kept_vectors;
        for (std::size_t i = 0; i < texts.size(); ++i) {
            const Vec v = embedder.embed_sentence(texts[i]);
            bool close = false;
            for (const Vec& prev : kept_vectors) {
                if (cosine(v, prev) >= threshold) close = true;
            }
            if (!close) {
                expected.push_back(i);
                kept_vectors.push_back(v);
            }
        }
        if (paraphrase_filter(texts, embedder, threshold) != expected) {
            return "trial " + std::to_string(trial) + " diverged from brute force";
        }
    }
    return "";
}

// ---- C4: ranked selection vs an independent oracle ----------------------

std::string check_ranking_oracle() {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const RandomSentenceEmbedder embedder(8, 70000 + static_cast<std::uint64_t>(trial));
        const Vec lexvec = embedder.embed_sentence("anchor");

        std::vector<Candidate> pool;
        const int n_seeds = 1 + static_cast<int>(rng.bounded(5));
        for (int seed = 0; seed < n_seeds; ++seed) {
            const int per_seed = static_cast<int>(rng.bounded(101));
            for (int index = 0; index < per_seed; ++index) {
                pool.push_back(Candidate{seed, index,
                                         "q" + std::to_string(trial) + "-" +
                                             std::to_string(seed) + "-" + std::to_string(index)});
            }
        }
        SelectionConfig config;
        config.m_per_seed = 50;
        config.k_total = 50 + static_cast<int>(rng.bounded(120));

        const auto selected = rank_and_select(pool, lexvec, embedder, config);

        std::vector<int> per_seed_counts(static_cast<std::size_t>(n_seeds), 0);
        for (const auto& s : selected) {
            per_seed_counts[static_cast<std::size_t>(s.candidate.seed_id)] += 1;
        }
        for (int count : per_seed_counts) {
            if (count > config.m_per_seed) {
                return "trial " + std::to_string(trial) + " kept " + std::to_string(count) +
                       " from one seed, cap " + std::to_string(config.m_per_seed);
            }
        }

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

        if (selected.size() != expected.size()) {
            return "trial " + std::to_string(trial) + " selected " +
                   std::to_string(selected.size()) + ", want " + std::to_string(expected.size());
        }
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (selected[i].candidate.seed_id != expected[i].candidate.seed_id ||
                selected[i].candidate.completion_index !=
                    expected[i].candidate.completion_index ||
                selected[i].score != expected[i].score) {
                return "trial " + std::to_string(trial) + " row " + std::to_string(i) +
                       " diverged from the oracle";
            }
        }
    }
    return "";
}

// ---- C5: cosine identities ----------------------------------------------

std::string check_cosine_identity() {
    Rng rng(17);
    for (int pair = 0; pair < 1000; ++pair) {
        Vec u(16), v(16);
        for (double& x : u) x = rng.next_gaussian();
        for (double& x : v) x = rng.next_gaussian();

        double dot = 0.0, uu = 0.0, vv = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            dot += u[i] * v[i];
            uu += u[i] * u[i];
            vv += v[i] * v[i];
        }
        const double direct = dot / (std::sqrt(uu) * std::sqrt(vv));
        if (std::abs(cosine(u, v) - direct) > kCosineTolerance) {
            return "pair " + std::to_string(pair) + " off by " +
                   fmt(std::abs(cosine(u, v) - direct));
        }
        if (std::abs(cosine(u, u) - 1.0) > kCosineTolerance) {
            return "self-similarity is " + fmt(cosine(u, u)) + ", want 1";
        }
    }
    const Vec zero(16, 0.0);
    Vec ones(16, 1.0);
    if (cosine(zero, ones) != 0.0) return "zero vector convention broken";
    if (cosine(zero, zero) != 0.0) return "zero-zero convention broken";
    return "";
}

// ---- C6: bottom-k background selection vs full sort ----------------------

std::string check_negative_bottom_k() {
    const std::vector<std::string> dark = {"hurt",   "fear",  "monster", "rage",  "pain",
                                           "broken", "cruel", "misery",  "awful", "terrible"};
    std::vector<CleanSentence> pool;
    pool.reserve(8000);
    for (int i = 0; i < 8000; ++i) {
        const std::string n = std::to_string(i);
        CleanSentence sentence;
        sentence.sentence_id = "bg:" + n;
        sentence.text =
            "thing" + n + " is " + dark[static_cast<std::size_t>(i) % dark.size()] + " and omen" + n;
        sentence.source_tag = "bg";
        sentence.token_count = token_count(sentence.text);
        pool.push_back(std::move(sentence));
    }

    const HashedEmbedder embedder(32, 0);
    const LexiconSentiment sentiment;
    const Vec lexvec = lexicon_vector(default_lexicon(), embedder);
    const FilterConfig filter_config;

    const NegativeAssembly first =
        assemble_negative(pool, lexvec, embedder, sentiment, filter_config, 8000, 1700, 99,
                          "acceptance:background");
    if (first.sampled != 8000) {
        return "sampled " + std::to_string(first.sampled) + ", want 8000";
    }
    if (first.filter_report.survivor_count != 8000) {
        return "only " + std::to_string(first.filter_report.survivor_count) +
               " of 8000 background sentences survived the filters";
    }
    if (first.negatives.size() != 1700 || first.shortfall != 0) {
        return "got " + std::to_string(first.negatives.size()) + " negatives, want 1700";
    }

    std::vector<std::pair<double, std::string>> scored;
    scored.reserve(pool.size());
    std::set<double> distinct;
    for (const auto& sentence : pool) {
        const double score = cosine(embedder.embed_sentence(sentence.text), lexvec);
        distinct.insert(score);
        scored.emplace_back(score, sentence.text);
    }
    if (distinct.size() != pool.size()) {
        return "score ties in the fixture, the full-sort oracle is ambiguous";
    }
    std::sort(scored.begin(), scored.end());
    for (std::size_t i = 0; i < 1700; ++i) {
        if (first.negatives[i].text != scored[i].second) {
            return "row " + std::to_string(i) + " is not the " + std::to_string(i) +
                   "-th lowest-scoring sentence";
        }
    }

    const NegativeAssembly second =
        assemble_negative(pool, lexvec, embedder, sentiment, filter_config, 8000, 1700, 99,
                          "acceptance:background");
    for (std::size_t i = 0; i < 1700; ++i) {
        if (first.negatives[i].text != second.negatives[i].text) {
            return "rerun diverged at row " + std::to_string(i);
        }
    }
    return "";
}

// ---- C7: user scores are order-free means --------------------------------

std::string check_user_score_mean() {
    LabeledDataset dataset;
    dataset.name = "acceptance";
    Rng rng(23);
    const std::vector<std::string> vocab = {"hurt", "fear",  "monster", "walk",
                                            "road", "coffee", "love",   "happy"};
    for (int i = 0; i < 30; ++i) {
        LabeledSentence sentence;
        sentence.text = vocab[rng.bounded(vocab.size())] + " " +
                        vocab[rng.bounded(vocab.size())];
        sentence.label = (i % 2 == 0) ? Label::POSITIVE : Label::NEGATIVE;
        dataset.sentences.push_back(std::move(sentence));
    }
    const TrainedScorer scorer =
        train_scorer(std::make_shared<LexicalClassifier>(std::vector<std::string>{}),
                     TrainingSchedule{{dataset}});

    UserRecord user;
    user.user_id = "acceptance";
    for (int i = 0; i < 25; ++i) {
        user.sentences.push_back(vocab[rng.bounded(vocab.size())] + " " +
                                 vocab[rng.bounded(vocab.size())] + " " +
                                 vocab[rng.bounded(vocab.size())]);
    }

    double naive = 0.0;
    for (const auto& sentence : user.sentences) naive += scorer.score(sentence);
    naive /= static_cast<double>(user.sentences.size());

    const double reported = psycho_score(scorer, user).score;
    if (std::abs(reported - naive) > kMeanTolerance) {
        return "mean off by " + fmt(std::abs(reported - naive));
    }

    for (int shuffle = 0; shuffle < 20; ++shuffle) {
        UserRecord permuted;
        permuted.user_id = user.user_id;
        const auto order =
            sample_without_replacement(user.sentences.size(), user.sentences.size(), rng);
        for (std::size_t index : order) permuted.sentences.push_back(user.sentences[index]);
        if (psycho_score(scorer, permuted).score != reported) {
            return "shuffle " + std::to_string(shuffle) + " changed the score";
        }
    }
    return "";
}

// ---- C8: confusion metrics vs oracle formulas ----------------------------

std::string check_metrics_oracle() {
    const EvalMetrics hand = metrics_from_confusion(1, 0, 1, 2);
    if (hand.precision != 1.0) return "hand case precision " + fmt(hand.precision) + ", want 1";
    if (hand.recall != 0.5) return "hand case recall " + fmt(hand.recall) + ", want 0.5";
    if (std::abs(hand.f1 - 2.0 / 3.0) > kMetricsTolerance) {
        return "hand case f1 " + fmt(hand.f1) + ", want 2/3";
    }
    if (std::abs(hand.macro_f1 - 11.0 / 15.0) > kMetricsTolerance) {
        return "hand case macro f1 " + fmt(hand.macro_f1) + ", want 11/15";
    }

    Rng rng(29);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t tp = rng.bounded(51);
        const std::size_t fp = rng.bounded(51);
        const std::size_t fn = rng.bounded(51);
        const std::size_t tn = rng.bounded(51);

        auto ratio = [](std::size_t num, std::size_t den) {
            return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
        };
        auto f1_of = [](double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; };
        const double precision = ratio(tp, tp + fp);
        const double recall = ratio(tp, tp + fn);
        const double f1 = f1_of(precision, recall);
        const double neg_f1 = f1_of(ratio(tn, tn + fn), ratio(tn, tn + fp));
        const double macro = (f1 + neg_f1) / 2.0;

        const EvalMetrics metrics = metrics_from_confusion(tp, fp, fn, tn);
        if (metrics.precision != precision || metrics.recall != recall || metrics.f1 != f1 ||
            metrics.macro_f1 != macro) {
            return "trial " + std::to_string(trial) + " (" + std::to_string(tp) + "," +
                   std::to_string(fp) + "," + std::to_string(fn) + "," + std::to_string(tn) +
                   ") diverged from the oracle";
        }
    }
    return "";
}

// ---- C9: fold protocol separates what is separable ------------------------

std::vector<ScoredUser> gaussian_scores(double pos_center, double neg_center, double sigma,
                                        int per_class, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ScoredUser> scores;
    scores.reserve(2 * static_cast<std::size_t>(per_class));
    for (int i = 0; i < per_class; ++i) {
        const double pos = std::clamp(pos_center + sigma * rng.next_gaussian(), 0.0, 1.0);
        const double neg = std::clamp(neg_center + sigma * rng.next_gaussian(), 0.0, 1.0);
        scores.push_back(ScoredUser{"p" + std::to_string(i), pos, Label::POSITIVE});
        scores.push_back(ScoredUser{"n" + std::to_string(i), neg, Label::NEGATIVE});
    }
    return scores;
}

std::string check_svm_separation() {
    const auto start = Clock::now();
    FoldConfig folds;
    folds.folds = 5;
    folds.n_per_class = 100;
    folds.train_fraction = 0.8;
    folds.master_seed = 3;
    const SVMConfig svm; // C=1, RBF, gamma "scale"

    const auto separable = gaussian_scores(0.8, 0.2, 0.05, 200, 31);
    const EvalMetrics good = cross_validate(separable, folds, svm);
    if (good.macro_f1 < kSeparableMacroF1Floor) {
        return "separable macro f1 " + fmt(good.macro_f1) + ", want >= " +
               fmt(kSeparableMacroF1Floor);
    }

    const auto hopeless = gaussian_scores(0.5, 0.5, 0.1, 200, 37);
    const EvalMetrics chance = cross_validate(hopeless, folds, svm);
    if (chance.macro_f1 < kChanceMacroF1Low || chance.macro_f1 > kChanceMacroF1High) {
        return "identical-distribution macro f1 " + fmt(chance.macro_f1) + ", want in [" +
               fmt(kChanceMacroF1Low) + ", " + fmt(kChanceMacroF1High) + "]";
    }

    const double elapsed = seconds_since(start);
    if (elapsed >= kRunBudgetSeconds) {
        return "took " + fmt(elapsed) + "s, budget " + fmt(kRunBudgetSeconds) + "s";
    }
    return "";
}

// ---- C10: full reruns are byte-identical ----------------------------------

std::string check_rerun_identity() {
    const auto start = Clock::now();
    RunConfig config = load_run_config(testutil::source_dir() / "configs" / "toy.json");

    testutil::TempDir tmp_a;
    RunConfig config_a = config;
    config_a.output_dir = (tmp_a.path() / "out").string();
    PipelineRunner runner_a(config_a);
    runner_a.run_all();
    const auto tree_a = testutil::snapshot_tree(runner_a.run_dir());

    testutil::TempDir tmp_b;
    RunConfig config_b = config;
    config_b.output_dir = (tmp_b.path() / "out").string();
    PipelineRunner runner_b(config_b);
    runner_b.run_all();
    const auto tree_b = testutil::snapshot_tree(runner_b.run_dir());

    if (tree_a.size() != tree_b.size()) {
        return "trees differ in file count: " + std::to_string(tree_a.size()) + " vs " +
               std::to_string(tree_b.size());
    }
    for (const auto& [relative, bytes] : tree_a) {
        const auto it = tree_b.find(relative);
        if (it == tree_b.end()) return "second run is missing " + relative;
        if (it->second != bytes) return relative + " differs between the runs";
    }

    runner_a.run_all(true);
    if (testutil::snapshot_tree(runner_a.run_dir()) != tree_a) {
        return "a forced rerun rewrote different bytes";
    }

    const double elapsed = seconds_since(start);
    if (elapsed >= kRunBudgetSeconds) {
        return "took " + fmt(elapsed) + "s, budget " + fmt(kRunBudgetSeconds) + "s";
    }
    return "";
}

// ---- C11: variant contracts ------------------------------------------------

std::string check_variant_contracts() {
    {
        testutil::TempDir tmp;
        RunConfig config =
            load_run_config(testutil::source_dir() / "configs" / "toy_minus.json");
        config.output_dir = (tmp.path() / "out").string();
        PipelineRunner runner(config);
        const auto results = runner.run_all();
        if (results.size() != 7) return "base-model run finished " +
                                        std::to_string(results.size()) + " of 7 stages";
        const json manifest = read_json_file(runner.run_dir() / "dataset" / "manifest.json");
        if (!manifest.contains("fine_tuned") || manifest.at("fine_tuned").get<bool>() != false) {
            return "base-model run must record fine_tuned=false";
        }
        if (!std::filesystem::exists(runner.run_dir() / "eval" / "metrics.jsonl")) {
            return "base-model run produced no metrics";
        }
    }
    {
        testutil::TempDir tmp;
        RunConfig config =
            load_run_config(testutil::source_dir() / "configs" / "toy_prelim.json");
        config.output_dir = (tmp.path() / "out").string();
        PipelineRunner runner(config);
        const auto results = runner.run_all();
        if (results.size() != 7) return "corpus-only run finished " +
                                        std::to_string(results.size()) + " of 7 stages";

        std::unordered_set<std::string> corpus_texts;
        for (const auto& sentence :
             load_corpus_jsonl(runner.run_dir() / "corpus" / "corpus.jsonl")) {
            corpus_texts.insert(sentence.text);
        }
        const LabeledDataset dataset =
            load_dataset_jsonl(runner.run_dir() / "dataset" / "dataset.jsonl", "toy_prelim");
        std::size_t positives = 0;
        for (const auto& sentence : dataset.sentences) {
            if (sentence.label != Label::POSITIVE) continue;
            ++positives;
            if (corpus_texts.count(sentence.text) == 0) {
                return "positive sentence is not a verbatim corpus sentence: " + sentence.text;
            }
        }
        if (positives == 0) return "corpus-only run produced no positives";

        const json manifest = read_json_file(runner.run_dir() / "dataset" / "manifest.json");
        if (manifest.contains("fine_tuned")) {
            return "corpus-only run must not claim a fine-tune state";
        }
    }
    return "";
}

struct Criterion {
    const char* id;
    const char* slug;
    std::function<std::string()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"C1", "generation-volume", check_generation_volume},
        {"C2", "filter-accounting", check_filter_accounting},
        {"C3", "paraphrase-oracle", check_paraphrase_oracle},
        {"C4", "ranking-oracle", check_ranking_oracle},
        {"C5", "cosine-identity", check_cosine_identity},
        {"C6", "negative-bottom-k", check_negative_bottom_k},
        {"C7", "user-score-mean", check_user_score_mean},
        {"C8", "metrics-oracle", check_metrics_oracle},
        {"C9", "svm-separation", check_svm_separation},
        {"C10", "rerun-identity", check_rerun_identity},
        {"C11", "variant-contracts", check_variant_contracts},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        std::string detail;
        try {
            detail = criterion.run();
        } catch (const std::exception& e) {
            detail = std::string("threw: ") + e.what();
        }
        if (detail.empty()) {
            std::printf("%s %s: PASS\n", criterion.id, criterion.slug);
        } else {
            std::printf("%s %s: FAIL - %s\n", criterion.id, criterion.slug, detail.c_str());
            ++failed;
        }
        std::fflush(stdout);
    }
    return failed;
}
