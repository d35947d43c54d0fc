#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "pedant/corpus.hpp"
#include "pedant/datasets.hpp"
#include "pedant/evaluation.hpp"
#include "pedant/generator.hpp"
#include "pedant/jsonl.hpp"
#include "pedant/sentiment.hpp"

namespace pedant {

enum class Stage { INGEST, FINETUNE, GENERATE, FILTER, RANK, ASSEMBLE, EVALUATE };

const std::vector<Stage>& all_stages();
std::string to_string(Stage stage);
Stage stage_from_string(const std::string& s);

// One input file plus the tag stamped on every record drawn from it. `path`
// stays exactly as written in the config (it feeds the config hash);
// `resolved` is that path made usable from anywhere.
struct SourceSpec {
    std::string path;
    std::string source_tag;
    std::filesystem::path resolved;
};

struct EmbeddingSpec {
    std::string provider = "hashed"; // "hashed" or "table"
    std::size_t dimension = 64;
    std::uint64_t salt = 0;
    std::string table_file; // table provider only
    std::filesystem::path resolved_table;
};

struct TestCorpusSpec {
    std::string name;
    std::string path;
    std::filesystem::path resolved;
    std::string format = "user_grouped_jsonl";
    std::unordered_map<std::string, std::string> label_map = {{"positive", "positive"},
                                                              {"negative", "negative"}};
    bool balance = false;
};

struct EvaluationSpec {
    bool enabled = true;
    std::string classifier = "lexical";
    std::vector<std::string> schedule; // dataset names, trained in order
    std::map<std::string, std::string> extra_datasets; // name -> dataset artifact path
    std::map<std::string, std::filesystem::path> resolved_datasets;
    std::vector<TestCorpusSpec> test_corpora;
    FoldConfig folds; // master_seed is derived per test corpus at run time
    SVMConfig svm;
};

struct DatasetSpec {
    std::string name = "dexter";
    std::size_t positive_target = 1700;
    std::size_t negative_target = 1700;
    std::size_t negative_sample_size = 8000;
    bool balance_classes = true;
    std::vector<SourceSpec> negative_pool;
};

// A full run description. Everything an operator can set lives here; the
// stages themselves take no other input, so a config value pins the whole
// artifact tree.
struct RunConfig {
    PipelineVariant variant = PipelineVariant::DEXTER;
    std::vector<SourceSpec> corpus_sources; // may be empty for dexter_minus
    CleaningConfig cleaning;
    std::string seed_file; // empty -> packaged default seed set
    std::filesystem::path resolved_seed_file;
    std::string lexicon_file; // empty -> packaged default lexicon
    std::filesystem::path resolved_lexicon_file;
    std::string generator_backend = "mock";
    TrainingConfig training;
    SamplingParams sampling; // master_seed mirrors the run master_seed
    FilterConfig filter;
    EmbeddingSpec embedding;
    std::string sentiment_provider = "lexicon";
    SelectionConfig selection;
    DatasetSpec dataset;
    EvaluationSpec evaluation;
    std::uint64_t master_seed = 0;
    std::string output_dir = "out";
    std::string run_id; // empty -> derived from the config hash

    // Identity of the run: every behavior-affecting field with defaults
    // filled in, sets sorted, paths as written. output_dir and run_id are
    // excluded so moving the artifacts does not change what they are.
    json canonical_json() const;
    std::string config_hash() const; // 16 hex digits
    std::string effective_run_id() const;
    std::filesystem::path run_dir() const;
};

// Parses and validates the whole config up front; unknown keys, bad values
// and missing input files raise ConfigError naming the field path. Relative
// input paths resolve against the config file's directory.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig run_config_from_json(const json& root, const std::filesystem::path& base_dir);

// Artifact row schemas, shared by the stages and anything that inspects
// their output.
json candidate_to_json(const Candidate& candidate);
json scored_to_json(const ScoredCandidate& scored);
json clean_sentence_to_json(const CleanSentence& sentence);
std::vector<Candidate> load_candidates_jsonl(const std::filesystem::path& path);
void save_candidates_jsonl(const std::filesystem::path& path,
                           const std::vector<Candidate>& candidates);
std::vector<ScoredCandidate> load_scored_jsonl(const std::filesystem::path& path);
void save_scored_jsonl(const std::filesystem::path& path,
                       const std::vector<ScoredCandidate>& scored);
std::vector<CleanSentence> load_corpus_jsonl(const std::filesystem::path& path);
void save_corpus_jsonl(const std::filesystem::path& path,
                       const std::vector<CleanSentence>& sentences);

struct StageResult {
    Stage stage = Stage::INGEST;
    bool skipped = false; // already up to date, artifacts left untouched
    json counts;
};

// Drives the stages over an artifact directory:
//
//   <output_dir>/<run_id>/
//     manifest.json                 config hash, seed, per-stage entries
//     corpus/corpus.jsonl           cleaned sentences + stats.json
//     corpus/negative_pool.jsonl    cleaned background sentences
//     model/handle.json             generator model handle
//     candidates/candidates.jsonl   raw completions
//     filtered/survivors.jsonl      + report.json with per-rule counts
//     scored/scored.jsonl           ranked selection with scores
//     dataset/dataset.jsonl         labeled sentences + manifest.json
//     eval/metrics.jsonl            one metrics row per test corpus
//
// Each stage reads only its predecessors' artifacts, so deleting one
// artifact and rerunning its stage reproduces it byte for byte. A stage
// whose entry already matches the config hash is skipped unless forced.
class PipelineRunner {
public:
    explicit PipelineRunner(RunConfig config);

    StageResult run_stage(Stage stage, bool force = false);
    std::vector<StageResult> run_range(Stage first, Stage last, bool force = false);
    std::vector<StageResult> run_all(bool force = false);

    const RunConfig& config() const { return config_; }
    const std::filesystem::path& run_dir() const { return run_dir_; }

private:
    json load_manifest() const;
    void store_stage_entry(Stage stage, const json& counts);
    bool up_to_date(Stage stage) const;
    std::vector<std::filesystem::path> stage_artifacts(Stage stage) const;
    void require_artifact(const std::filesystem::path& path, Stage producer) const;

    json ingest_stage();
    json finetune_stage();
    json generate_stage();
    json filter_stage();
    json rank_stage();
    json assemble_stage();
    json evaluate_stage();

    SeedSet load_configured_seeds() const;
    PersonalityLexicon load_configured_lexicon() const;
    std::unique_ptr<Embedder> make_embedder() const;
    std::unique_ptr<SentimentProvider> make_sentiment() const;

    RunConfig config_;
    std::filesystem::path run_dir_;
};

} // namespace pedant
