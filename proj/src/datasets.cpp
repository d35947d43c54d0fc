#include "pedant/datasets.hpp"

#include <algorithm>

#include "pedant/errors.hpp"
#include "pedant/rng.hpp"

namespace pedant {

std::string to_string(Label label) {
    return label == Label::POSITIVE ? "positive" : "negative";
}

Label label_from_string(const std::string& s) {
    if (s == "positive") return Label::POSITIVE;
    if (s == "negative") return Label::NEGATIVE;
    throw DataError("unknown label '" + s + "'");
}

std::string to_string(PipelineVariant variant) {
    switch (variant) {
        case PipelineVariant::DEXTER: return "dexter";
        case PipelineVariant::DEXTER_MINUS: return "dexter_minus";
        case PipelineVariant::PRELIM: return "prelim";
    }
    throw std::logic_error("unreachable variant");
}

PipelineVariant variant_from_string(const std::string& s) {
    if (s == "dexter") return PipelineVariant::DEXTER;
    if (s == "dexter_minus") return PipelineVariant::DEXTER_MINUS;
    if (s == "prelim") return PipelineVariant::PRELIM;
    throw ConfigError("unknown pipeline variant '" + s + "'");
}

json manifest_to_json(const DatasetManifest& manifest) {
    json counts{{"positives", manifest.counts.positives},
                {"negatives", manifest.counts.negatives}};
    json shortfalls{{"positive", manifest.counts.positive_shortfall},
                    {"negative", manifest.counts.negative_shortfall}};
    json out{{"name", manifest.name},
             {"variant", to_string(manifest.variant)},
             {"config_hash", manifest.config_hash},
             {"master_seed", manifest.master_seed},
             {"counts", std::move(counts)},
             {"shortfalls", std::move(shortfalls)}};
    if (manifest.fine_tuned.has_value()) out["fine_tuned"] = *manifest.fine_tuned;
    return out;
}

LabeledDataset AugmentedDataset::to_labeled_dataset() const {
    LabeledDataset out;
    out.name = name;
    out.sentences.reserve(positives.size() + negatives.size());
    out.sentences.insert(out.sentences.end(), positives.begin(), positives.end());
    out.sentences.insert(out.sentences.end(), negatives.begin(), negatives.end());
    return out;
}

std::vector<LabeledSentence> assemble_positive(const std::vector<ScoredCandidate>& selection,
                                               std::size_t target_count,
                                               const std::string& provenance,
                                               std::size_t* shortfall) {
    if (target_count == 0) throw ConfigError("positive target_count must be >= 1");
    if (selection.empty()) throw DataError("cannot assemble positives from an empty selection");

    std::vector<ScoredCandidate> sorted = selection;
    std::sort(sorted.begin(), sorted.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.candidate.seed_id != b.candidate.seed_id) {
            return a.candidate.seed_id < b.candidate.seed_id;
        }
        return a.candidate.completion_index < b.candidate.completion_index;
    });
    const std::size_t take = std::min(target_count, sorted.size());
    if (shortfall) *shortfall = target_count - take;

    std::vector<LabeledSentence> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        out.push_back(LabeledSentence{sorted[i].candidate.text, Label::POSITIVE, provenance});
    }
    return out;
}

NegativeAssembly assemble_negative(const std::vector<CleanSentence>& pool,
                                   const Vec& lexvec, const Embedder& embedder,
                                   const SentimentProvider& sentiment,
                                   const FilterConfig& filter_config,
                                   std::size_t sample_size, std::size_t target_count,
                                   std::uint64_t master_seed, const std::string& provenance,
                                   const std::unordered_set<std::string>* exclude_texts) {
    if (pool.empty()) throw DataError("negative pool is empty");
    if (target_count == 0) throw ConfigError("negative target_count must be >= 1");
    if (target_count > sample_size) {
        throw ConfigError("negative target_count exceeds sample_size");
    }

    Rng rng(derive_seed(master_seed, fnv1a64("negative-sample"), 0));
    const std::size_t k = std::min(sample_size, pool.size());
    const auto draw = sample_without_replacement(pool.size(), k, rng);

    std::vector<Candidate> candidates;
    candidates.reserve(k);
    for (std::size_t position = 0; position < draw.size(); ++position) {
        candidates.push_back(
            Candidate{0, static_cast<int>(position), pool[draw[position]].text});
    }

    NegativeAssembly result;
    result.sampled = candidates.size();
    auto [survivors, report] = apply_filters(candidates, filter_config, sentiment, embedder);
    result.filter_report = std::move(report);

    struct Scored {
        double score;
        int completion_index;
        const std::string* text;
    };
    std::vector<Scored> scored;
    scored.reserve(survivors.size());
    for (const auto& cand : survivors) {
        if (exclude_texts && exclude_texts->count(cand.text)) continue;
        scored.push_back(Scored{cosine(sentence_vector(cand.text, embedder), lexvec),
                                cand.completion_index, &cand.text});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.completion_index < b.completion_index;
    });

    const std::size_t take = std::min(target_count, scored.size());
    result.shortfall = target_count - take;
    result.negatives.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        result.negatives.push_back(LabeledSentence{*scored[i].text, Label::NEGATIVE, provenance});
    }
    return result;
}

AugmentedDataset run_variant(const VariantConfig& config,
                             const std::vector<CleanSentence>& corpus,
                             const std::vector<CleanSentence>& negative_pool,
                             GeneratorBackend& generator, const Embedder& embedder,
                             const SentimentProvider& sentiment) {
    const Vec lexvec = lexicon_vector(config.lexicon, embedder);
    const std::string variant_name = to_string(config.variant);

    std::vector<Candidate> candidates;
    std::optional<bool> fine_tuned;
    if (config.variant == PipelineVariant::PRELIM) {
        candidates.reserve(corpus.size());
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            candidates.push_back(Candidate{0, static_cast<int>(i), corpus[i].text});
        }
    } else {
        ModelHandle model;
        if (config.variant == PipelineVariant::DEXTER) {
            model = fine_tune(generator, corpus, config.training);
        } else {
            model = generator.base_model();
        }
        fine_tuned = model.fine_tuned;
        SamplingParams params = config.sampling;
        params.master_seed = config.master_seed;
        candidates = generate_completions(generator, model, config.seeds, params).candidates;
    }

    auto [survivors, report] = apply_filters(candidates, config.filter, sentiment, embedder);
    const auto selection = rank_and_select(survivors, lexvec, embedder, config.selection);

    AugmentedDataset dataset;
    dataset.name = config.dataset_name;

    std::size_t positive_shortfall = 0;
    dataset.positives = assemble_positive(selection, config.positive_target,
                                          variant_name + ":ranked", &positive_shortfall);

    std::unordered_set<std::string> exclude;
    for (const auto& sentence : dataset.positives) exclude.insert(sentence.text);

    auto negatives = assemble_negative(
        negative_pool, lexvec, embedder, sentiment, config.filter,
        config.negative_sample_size, config.negative_target,
        derive_seed(config.master_seed, fnv1a64("negatives"), 0),
        variant_name + ":background", &exclude);
    dataset.negatives = std::move(negatives.negatives);

    if (config.balance_classes && dataset.positives.size() != dataset.negatives.size()) {
        const std::size_t keep = std::min(dataset.positives.size(), dataset.negatives.size());
        dataset.positives.resize(keep);
        dataset.negatives.resize(keep);
    }

    dataset.manifest.name = config.dataset_name;
    dataset.manifest.variant = config.variant;
    dataset.manifest.config_hash = config.config_hash;
    dataset.manifest.master_seed = config.master_seed;
    dataset.manifest.counts.positives = dataset.positives.size();
    dataset.manifest.counts.negatives = dataset.negatives.size();
    dataset.manifest.counts.positive_shortfall = positive_shortfall;
    dataset.manifest.counts.negative_shortfall = negatives.shortfall;
    dataset.manifest.fine_tuned = fine_tuned;
    return dataset;
}

json labeled_sentence_to_json(const LabeledSentence& sentence) {
    return json{{"text", sentence.text},
                {"label", to_string(sentence.label)},
                {"provenance", sentence.provenance}};
}

void save_dataset_jsonl(const std::filesystem::path& path, const AugmentedDataset& dataset) {
    std::vector<json> rows;
    rows.reserve(dataset.positives.size() + dataset.negatives.size());
    for (const auto& sentence : dataset.positives) {
        rows.push_back(labeled_sentence_to_json(sentence));
    }
    for (const auto& sentence : dataset.negatives) {
        rows.push_back(labeled_sentence_to_json(sentence));
    }
    write_jsonl(path, rows);
}

LabeledDataset load_dataset_jsonl(const std::filesystem::path& path, const std::string& name) {
    LabeledDataset dataset;
    dataset.name = name;
    std::size_t line_no = 0;
    for (const auto& row : read_jsonl(path)) {
        ++line_no;
        if (row.is_discarded() || !row.is_object()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": malformed dataset record");
        }
        LabeledSentence sentence;
        try {
            sentence.text = row.at("text").get<std::string>();
            sentence.label = label_from_string(row.at("label").get<std::string>());
            if (row.contains("provenance")) {
                sentence.provenance = row["provenance"].get<std::string>();
            }
        } catch (const json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (sentence.text.empty()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": dataset sentence text is empty");
        }
        dataset.sentences.push_back(std::move(sentence));
    }
    return dataset;
}

} // namespace pedant
