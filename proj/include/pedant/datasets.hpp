#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "pedant/corpus.hpp"
#include "pedant/filtering.hpp"
#include "pedant/generation.hpp"
#include "pedant/ranking.hpp"

namespace pedant {

enum class Label { POSITIVE, NEGATIVE };

std::string to_string(Label label);
Label label_from_string(const std::string& s);

struct LabeledSentence {
    std::string text;
    Label label = Label::NEGATIVE;
    std::string provenance; // variant + stage, e.g. "dexter:ranked"
};

struct LabeledDataset {
    std::string name;
    std::vector<LabeledSentence> sentences;
};

enum class PipelineVariant { DEXTER, DEXTER_MINUS, PRELIM };

std::string to_string(PipelineVariant variant);
PipelineVariant variant_from_string(const std::string& s);

struct DatasetCounts {
    std::size_t positives = 0;
    std::size_t negatives = 0;
    std::size_t positive_shortfall = 0;
    std::size_t negative_shortfall = 0;
};

struct DatasetManifest {
    std::string name;
    PipelineVariant variant = PipelineVariant::DEXTER;
    std::string config_hash;
    std::uint64_t master_seed = 0;
    DatasetCounts counts;
    std::optional<bool> fine_tuned; // absent for PRELIM
};

json manifest_to_json(const DatasetManifest& manifest);

struct AugmentedDataset {
    std::string name;
    std::vector<LabeledSentence> positives;
    std::vector<LabeledSentence> negatives;
    DatasetManifest manifest;

    LabeledDataset to_labeled_dataset() const;
};

// Top target_count of the selection by score (global, canonical index breaks
// ties), labeled POSITIVE. A smaller selection is used whole and the gap is
// reported through *shortfall.
std::vector<LabeledSentence> assemble_positive(const std::vector<ScoredCandidate>& selection,
                                               std::size_t target_count,
                                               const std::string& provenance,
                                               std::size_t* shortfall = nullptr);

struct NegativeAssembly {
    std::vector<LabeledSentence> negatives;
    std::size_t sampled = 0;
    std::size_t shortfall = 0;
    FilterReport filter_report;
};

// Sample sample_size pool sentences (seeded), push them through the same
// filter stack, score against lexvec and keep the target_count lowest.
// Texts in exclude_texts never enter the negative class.
NegativeAssembly assemble_negative(const std::vector<CleanSentence>& pool,
                                   const Vec& lexvec, const Embedder& embedder,
                                   const SentimentProvider& sentiment,
                                   const FilterConfig& filter_config,
                                   std::size_t sample_size, std::size_t target_count,
                                   std::uint64_t master_seed, const std::string& provenance,
                                   const std::unordered_set<std::string>* exclude_texts = nullptr);

struct VariantConfig {
    PipelineVariant variant = PipelineVariant::DEXTER;
    std::string dataset_name = "dexter";
    SeedSet seeds;
    TrainingConfig training;
    SamplingParams sampling;
    FilterConfig filter;
    SelectionConfig selection;
    PersonalityLexicon lexicon;
    std::size_t positive_target = 1700;
    std::size_t negative_target = 1700;
    std::size_t negative_sample_size = 8000;
    bool balance_classes = true;
    std::uint64_t master_seed = 0;
    std::string config_hash;
};

// One-shot assembly of an augmented dataset:
//   DEXTER       fine-tune -> generate -> filter -> rank -> assemble
//   DEXTER_MINUS same, prompting the base model instead of fine-tuning
//   PRELIM       corpus sentences go straight into filter -> rank
AugmentedDataset run_variant(const VariantConfig& config,
                             const std::vector<CleanSentence>& corpus,
                             const std::vector<CleanSentence>& negative_pool,
                             GeneratorBackend& generator, const Embedder& embedder,
                             const SentimentProvider& sentiment);

json labeled_sentence_to_json(const LabeledSentence& sentence);
void save_dataset_jsonl(const std::filesystem::path& path, const AugmentedDataset& dataset);
LabeledDataset load_dataset_jsonl(const std::filesystem::path& path, const std::string& name);

} // namespace pedant
