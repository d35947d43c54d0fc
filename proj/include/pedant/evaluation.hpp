#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "pedant/classifier.hpp"
#include "pedant/svm.hpp"

namespace pedant {

struct TrainingSchedule {
    std::vector<LabeledDataset> stages; // trained in order; the last names the scorer
};

struct UserRecord {
    std::string user_id;
    std::vector<std::string> sentences;
    Label label = Label::NEGATIVE;
};

struct PsychoScore {
    std::string user_id;
    double score = 0.0;
};

struct FoldConfig {
    int folds = 5;
    int n_per_class = 100;
    double train_fraction = 0.8;
    std::uint64_t master_seed = 0;
};

struct SVMConfig {
    double C = 1.0;
    KernelKind kernel = KernelKind::RBF;
    std::string gamma = "scale"; // "scale" or a decimal value
};

struct EvalMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double macro_f1 = 0.0;
    double macro_f1_std = 0.0;
};

struct TrainedScorer {
    std::string tag; // e.g. "Dexter@lexical" or "Dexter@lexical+"
    std::shared_ptr<ClassifierBackend> backend;

    double score(const std::string& text) const { return backend->score(text); }
};

struct ScoredUser {
    std::string user_id;
    double score = 0.0;
    Label label = Label::NEGATIVE;
};

// Trains the backend over the schedule stages in order. The tag is the last
// stage's name (capitalized) @ backend id, with one '+' per preceding stage.
TrainedScorer train_scorer(std::shared_ptr<ClassifierBackend> backend,
                           const TrainingSchedule& schedule);

// Mean scorer output over the user's sentences.
PsychoScore psycho_score(const TrainedScorer& scorer, const UserRecord& user);

// Seeded uniform down-sampling of the majority class to the minority count;
// output preserves input order.
std::vector<UserRecord> balance_downsample(const std::vector<UserRecord>& users,
                                           std::uint64_t master_seed);

// The fold protocol: per fold, sample n_per_class users per class, split
// train/test stratified, standardize scores on the train split, fit the SVM
// and score the held-out users. Metrics are averaged across folds;
// macro_f1_std is the spread across folds.
EvalMetrics cross_validate(const std::vector<ScoredUser>& scores, const FoldConfig& fold_config,
                           const SVMConfig& svm_config);

// Positive-class precision/recall/F1 plus macro-F1 over both classes; any
// 0/0 ratio is 0.
EvalMetrics metrics_from_confusion(std::size_t tp, std::size_t fp, std::size_t fn,
                                   std::size_t tn);

struct TestCorpusLoad {
    std::vector<UserRecord> users;
    std::size_t skipped_users = 0;     // zero-sentence records
    std::size_t dropped_by_label = 0;  // labels the map sends to "drop"
};

// label_map: raw label value -> "positive" | "negative" | "drop". An absent
// entry is a data error so mislabeled corpora fail loudly.
TestCorpusLoad load_test_corpus(const std::filesystem::path& path, const std::string& format_id,
                                const std::unordered_map<std::string, std::string>& label_map = {
                                    {"positive", "positive"},
                                    {"negative", "negative"},
                                });

json metrics_to_json(const std::string& model_name, const std::string& dataset,
                     const EvalMetrics& metrics, const FoldConfig& fold_config);

} // namespace pedant
