#include "pedant/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <unordered_set>
#include <utility>

#include "pedant/classifier.hpp"
#include "pedant/errors.hpp"
#include "pedant/filtering.hpp"
#include "pedant/ranking.hpp"
#include "pedant/rng.hpp"

namespace pedant {

namespace fs = std::filesystem;

const std::vector<Stage>& all_stages() {
    static const std::vector<Stage> stages = {Stage::INGEST, Stage::FINETUNE, Stage::GENERATE,
                                              Stage::FILTER, Stage::RANK,     Stage::ASSEMBLE,
                                              Stage::EVALUATE};
    return stages;
}

std::string to_string(Stage stage) {
    switch (stage) {
        case Stage::INGEST: return "ingest";
        case Stage::FINETUNE: return "finetune";
        case Stage::GENERATE: return "generate";
        case Stage::FILTER: return "filter";
        case Stage::RANK: return "rank";
        case Stage::ASSEMBLE: return "assemble";
        case Stage::EVALUATE: return "evaluate";
    }
    return "?";
}

Stage stage_from_string(const std::string& s) {
    for (Stage stage : all_stages()) {
        if (to_string(stage) == s) return stage;
    }
    throw ConfigError("unknown stage '" + s +
                      "' (expected ingest, finetune, generate, filter, rank, assemble or "
                      "evaluate)");
}

namespace {

std::string join_path(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

[[noreturn]] void config_fail(const std::string& path, const std::string& message) {
    throw ConfigError("config: " + path + ": " + message);
}

void check_object(const json& value, const std::string& path,
                  std::initializer_list<const char*> allowed) {
    if (!value.is_object()) config_fail(path.empty() ? "(top level)" : path, "expected an object");
    for (const auto& item : value.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* name) { return item.key() == name; });
        if (!known) config_fail(join_path(path, item.key()), "unknown key");
    }
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       std::string fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) config_fail(join_path(path, key), "expected a string");
    return v.get<std::string>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) config_fail(join_path(path, key), "expected true or false");
    return v.get<bool>();
}

double get_double(const json& obj, const std::string& path, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) config_fail(join_path(path, key), "expected a number");
    return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        config_fail(join_path(path, key), "expected an integer");
    }
    const auto wide = v.get<std::int64_t>();
    if (wide < std::numeric_limits<int>::min() || wide > std::numeric_limits<int>::max()) {
        config_fail(join_path(path, key), "integer out of range");
    }
    return static_cast<int>(wide);
}

std::uint64_t get_u64(const json& obj, const std::string& path, const char* key,
                      std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
        const auto wide = v.get<std::int64_t>();
        if (wide < 0) config_fail(join_path(path, key), "expected a non-negative integer");
        return static_cast<std::uint64_t>(wide);
    }
    config_fail(join_path(path, key), "expected a non-negative integer");
}

std::size_t get_size(const json& obj, const std::string& path, const char* key,
                     std::size_t fallback) {
    return static_cast<std::size_t>(get_u64(obj, path, key, fallback));
}

fs::path resolve_path(const fs::path& base_dir, const std::string& raw) {
    fs::path p(raw);
    if (p.is_absolute()) return p.lexically_normal();
    return (base_dir / p).lexically_normal();
}

std::vector<SourceSpec> parse_sources(const json& value, const std::string& path,
                                      const fs::path& base_dir) {
    if (!value.is_array()) config_fail(path, "expected an array");
    std::vector<SourceSpec> sources;
    sources.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string epath = path + "[" + std::to_string(i) + "]";
        const json& el = value.at(i);
        check_object(el, epath, {"path", "source_tag"});
        SourceSpec spec;
        spec.path = get_string(el, epath, "path", "");
        spec.source_tag = get_string(el, epath, "source_tag", "");
        if (spec.path.empty()) config_fail(epath + ".path", "must not be empty");
        if (spec.source_tag.empty()) config_fail(epath + ".source_tag", "must not be empty");
        spec.resolved = resolve_path(base_dir, spec.path);
        sources.push_back(std::move(spec));
    }
    return sources;
}

std::vector<std::string> get_string_array(const json& obj, const std::string& path,
                                          const char* key) {
    const json& v = obj.at(key);
    if (!v.is_array()) config_fail(join_path(path, key), "expected an array of strings");
    std::vector<std::string> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v.at(i).is_string()) {
            config_fail(join_path(path, key) + "[" + std::to_string(i) + "]",
                        "expected a string");
        }
        out.push_back(v.at(i).get<std::string>());
    }
    return out;
}

std::string kernel_name(KernelKind kernel) {
    return kernel == KernelKind::RBF ? "rbf" : "linear";
}

KernelKind parse_kernel(const std::string& s, const std::string& path) {
    if (s == "rbf") return KernelKind::RBF;
    if (s == "linear") return KernelKind::LINEAR;
    config_fail(path, "expected \"rbf\" or \"linear\"");
}

bool valid_gamma(const std::string& s) {
    if (s == "scale") return true;
    try {
        std::size_t pos = 0;
        const double g = std::stod(s, &pos);
        return pos == s.size() && g > 0.0;
    } catch (const std::exception&) {
        return false;
    }
}

void require_file(const fs::path& path, const std::string& field) {
    if (!fs::exists(path)) config_fail(field, "file not found: " + path.string());
}

void validate_run_config(const RunConfig& cfg) {
    if (cfg.output_dir.empty()) config_fail("output_dir", "must not be empty");

    if (cfg.corpus_sources.empty() && cfg.variant != PipelineVariant::DEXTER_MINUS) {
        config_fail("corpus.sources", "at least one source is required for the " +
                                          to_string(cfg.variant) + " variant");
    }
    for (const auto& source : cfg.corpus_sources) require_file(source.resolved, "corpus.sources");

    if (!GeneratorRegistry::instance().contains(cfg.generator_backend)) {
        config_fail("generator.backend", "unknown backend '" + cfg.generator_backend + "'");
    }
    if (!(cfg.training.learning_rate > 0.0)) {
        config_fail("generator.training.learning_rate", "must be positive");
    }
    if (cfg.training.batch_size < 1) config_fail("generator.training.batch_size", "must be >= 1");
    if (cfg.training.steps < 0) config_fail("generator.training.steps", "must be >= 0");
    if (cfg.sampling.max_length < 1) config_fail("generator.sampling.max_length", "must be >= 1");
    if (!(cfg.sampling.temperature > 0.0)) {
        config_fail("generator.sampling.temperature", "must be positive");
    }
    if (cfg.sampling.top_k < 0) config_fail("generator.sampling.top_k", "must be >= 0");
    if (!(cfg.sampling.top_p > 0.0) || cfg.sampling.top_p > 1.0) {
        config_fail("generator.sampling.top_p", "must be in (0, 1]");
    }
    if (cfg.sampling.completions_per_seed < 1) {
        config_fail("generator.sampling.completions_per_seed", "must be >= 1");
    }

    if (cfg.filter.min_words < 1) config_fail("filter.min_words", "must be >= 1");
    if (!(cfg.filter.paraphrase_threshold > 0.0) || cfg.filter.paraphrase_threshold > 1.0) {
        config_fail("filter.paraphrase_threshold", "must be in (0, 1]");
    }
    if (cfg.filter.stopword_list_id != "english-standard") {
        config_fail("filter.stopword_list",
                    "unknown stop word list '" + cfg.filter.stopword_list_id + "'");
    }

    if (cfg.embedding.provider == "hashed") {
        if (cfg.embedding.dimension < 1) config_fail("embedding.dimension", "must be >= 1");
    } else if (cfg.embedding.provider == "table") {
        if (cfg.embedding.table_file.empty()) {
            config_fail("embedding.table_file", "required by the table provider");
        }
        require_file(cfg.embedding.resolved_table, "embedding.table_file");
    } else {
        config_fail("embedding.provider", "expected \"hashed\" or \"table\"");
    }
    if (cfg.sentiment_provider != "lexicon") {
        config_fail("sentiment.provider", "expected \"lexicon\"");
    }

    if (cfg.selection.m_per_seed < 1) config_fail("selection.m_per_seed", "must be >= 1");
    if (cfg.selection.k_total < cfg.selection.m_per_seed) {
        config_fail("selection.k_total", "must be >= selection.m_per_seed");
    }

    if (cfg.dataset.name.empty()) config_fail("dataset.name", "must not be empty");
    if (cfg.dataset.positive_target < 1) config_fail("dataset.positive_target", "must be >= 1");
    if (cfg.dataset.negative_target < 1) config_fail("dataset.negative_target", "must be >= 1");
    if (cfg.dataset.negative_sample_size < cfg.dataset.negative_target) {
        config_fail("dataset.negative_sample_size", "must be >= dataset.negative_target");
    }
    if (cfg.dataset.negative_pool.empty()) {
        config_fail("dataset.negative_pool", "at least one source is required");
    }
    for (const auto& source : cfg.dataset.negative_pool) {
        require_file(source.resolved, "dataset.negative_pool");
    }

    if (!cfg.seed_file.empty()) require_file(cfg.resolved_seed_file, "seeds.file");
    if (!cfg.lexicon_file.empty()) require_file(cfg.resolved_lexicon_file, "lexicon.file");

    if (cfg.evaluation.folds.folds < 1) config_fail("evaluation.folds.folds", "must be >= 1");
    if (cfg.evaluation.folds.n_per_class < 5) {
        config_fail("evaluation.folds.n_per_class", "must be >= 5");
    }
    if (!(cfg.evaluation.folds.train_fraction > 0.0) ||
        !(cfg.evaluation.folds.train_fraction < 1.0)) {
        config_fail("evaluation.folds.train_fraction", "must be in (0, 1)");
    }
    if (!(cfg.evaluation.svm.C > 0.0)) config_fail("evaluation.svm.C", "must be positive");
    if (!valid_gamma(cfg.evaluation.svm.gamma)) {
        config_fail("evaluation.svm.gamma", "expected \"scale\" or a positive number");
    }

    if (cfg.evaluation.enabled) {
        if (!ClassifierRegistry::instance().contains(cfg.evaluation.classifier)) {
            config_fail("evaluation.classifier",
                        "unknown classifier '" + cfg.evaluation.classifier + "'");
        }
        if (cfg.evaluation.schedule.empty()) {
            config_fail("evaluation.schedule", "must name at least one dataset");
        }
        for (const auto& name : cfg.evaluation.schedule) {
            if (name == cfg.dataset.name) continue;
            const auto it = cfg.evaluation.resolved_datasets.find(name);
            if (it == cfg.evaluation.resolved_datasets.end()) {
                config_fail("evaluation.schedule",
                            "dataset '" + name +
                                "' is neither this run's dataset nor in extra_datasets");
            }
            require_file(it->second, "evaluation.extra_datasets." + name);
        }
        if (cfg.evaluation.test_corpora.empty()) {
            config_fail("evaluation.test_corpora",
                        "at least one test corpus is required when evaluation is enabled");
        }
        std::unordered_set<std::string> corpus_names;
        for (std::size_t i = 0; i < cfg.evaluation.test_corpora.size(); ++i) {
            const auto& tc = cfg.evaluation.test_corpora[i];
            const std::string epath = "evaluation.test_corpora[" + std::to_string(i) + "]";
            if (tc.name.empty()) config_fail(epath + ".name", "must not be empty");
            if (!corpus_names.insert(tc.name).second) {
                config_fail(epath + ".name", "duplicate test corpus name '" + tc.name + "'");
            }
            if (tc.format != "user_grouped_jsonl" && tc.format != "message_level_jsonl") {
                config_fail(epath + ".format",
                            "expected \"user_grouped_jsonl\" or \"message_level_jsonl\"");
            }
            for (const auto& [raw, mapped] : tc.label_map) {
                if (mapped != "positive" && mapped != "negative" && mapped != "drop") {
                    config_fail(epath + ".label_map." + raw,
                                "expected \"positive\", \"negative\" or \"drop\"");
                }
            }
            require_file(tc.resolved, epath + ".path");
        }
    }
}

} // namespace

RunConfig run_config_from_json(const json& root, const fs::path& base_dir) {
    check_object(root, "",
                 {"variant", "run_id", "output_dir", "master_seed", "corpus", "seeds", "lexicon",
                  "generator", "filter", "embedding", "sentiment", "selection", "dataset",
                  "evaluation"});
    RunConfig cfg;

    const std::string variant = get_string(root, "", "variant", "dexter");
    try {
        cfg.variant = variant_from_string(variant);
    } catch (const ConfigError&) {
        config_fail("variant", "expected \"dexter\", \"dexter_minus\" or \"prelim\"");
    }
    cfg.master_seed = get_u64(root, "", "master_seed", 0);
    cfg.output_dir = get_string(root, "", "output_dir", "out");
    cfg.run_id = get_string(root, "", "run_id", "");

    if (root.contains("corpus")) {
        const json& corpus = root.at("corpus");
        check_object(corpus, "corpus", {"sources", "cleaning"});
        if (corpus.contains("sources")) {
            cfg.corpus_sources = parse_sources(corpus.at("sources"), "corpus.sources", base_dir);
        }
        if (corpus.contains("cleaning")) {
            const json& cleaning = corpus.at("cleaning");
            check_object(cleaning, "corpus.cleaning",
                         {"spellcheck", "emoji_removal", "link_removal", "spam_removal", "dedup"});
            cfg.cleaning.enable_spellcheck =
                get_bool(cleaning, "corpus.cleaning", "spellcheck", cfg.cleaning.enable_spellcheck);
            cfg.cleaning.enable_emoji_removal = get_bool(cleaning, "corpus.cleaning",
                                                         "emoji_removal",
                                                         cfg.cleaning.enable_emoji_removal);
            cfg.cleaning.enable_link_removal = get_bool(cleaning, "corpus.cleaning",
                                                        "link_removal",
                                                        cfg.cleaning.enable_link_removal);
            cfg.cleaning.enable_spam_removal = get_bool(cleaning, "corpus.cleaning",
                                                        "spam_removal",
                                                        cfg.cleaning.enable_spam_removal);
            cfg.cleaning.enable_dedup =
                get_bool(cleaning, "corpus.cleaning", "dedup", cfg.cleaning.enable_dedup);
        }
    }

    if (root.contains("seeds")) {
        const json& seeds = root.at("seeds");
        check_object(seeds, "seeds", {"file"});
        cfg.seed_file = get_string(seeds, "seeds", "file", "");
        if (!cfg.seed_file.empty()) cfg.resolved_seed_file = resolve_path(base_dir, cfg.seed_file);
    }
    if (root.contains("lexicon")) {
        const json& lexicon = root.at("lexicon");
        check_object(lexicon, "lexicon", {"file"});
        cfg.lexicon_file = get_string(lexicon, "lexicon", "file", "");
        if (!cfg.lexicon_file.empty()) {
            cfg.resolved_lexicon_file = resolve_path(base_dir, cfg.lexicon_file);
        }
    }

    if (root.contains("generator")) {
        const json& generator = root.at("generator");
        check_object(generator, "generator", {"backend", "training", "sampling"});
        cfg.generator_backend = get_string(generator, "generator", "backend", cfg.generator_backend);
        if (generator.contains("training")) {
            const json& training = generator.at("training");
            check_object(training, "generator.training",
                         {"learning_rate", "batch_size", "steps", "optimizer", "model_name"});
            cfg.training.learning_rate = get_double(training, "generator.training", "learning_rate",
                                                    cfg.training.learning_rate);
            cfg.training.batch_size =
                get_int(training, "generator.training", "batch_size", cfg.training.batch_size);
            cfg.training.steps = get_int(training, "generator.training", "steps", cfg.training.steps);
            cfg.training.optimizer_name =
                get_string(training, "generator.training", "optimizer", cfg.training.optimizer_name);
            cfg.training.model_name =
                get_string(training, "generator.training", "model_name", cfg.training.model_name);
        }
        if (generator.contains("sampling")) {
            const json& sampling = generator.at("sampling");
            check_object(sampling, "generator.sampling",
                         {"max_length", "temperature", "top_k", "top_p", "completions_per_seed"});
            cfg.sampling.max_length =
                get_int(sampling, "generator.sampling", "max_length", cfg.sampling.max_length);
            cfg.sampling.temperature = get_double(sampling, "generator.sampling", "temperature",
                                                  cfg.sampling.temperature);
            cfg.sampling.top_k = get_int(sampling, "generator.sampling", "top_k", cfg.sampling.top_k);
            cfg.sampling.top_p =
                get_double(sampling, "generator.sampling", "top_p", cfg.sampling.top_p);
            cfg.sampling.completions_per_seed =
                get_int(sampling, "generator.sampling", "completions_per_seed",
                        cfg.sampling.completions_per_seed);
        }
    }
    cfg.training.backend_id = cfg.generator_backend;

    if (root.contains("filter")) {
        const json& filter = root.at("filter");
        check_object(filter, "filter",
                     {"banned_words", "min_words", "stopword_list", "sentiment_rule_enabled",
                      "paraphrase_threshold", "paraphrase_per_seed"});
        if (filter.contains("banned_words")) {
            const auto words = get_string_array(filter, "filter", "banned_words");
            cfg.filter.banned_words.clear();
            for (std::size_t i = 0; i < words.size(); ++i) {
                if (words[i].empty()) {
                    config_fail("filter.banned_words[" + std::to_string(i) + "]",
                                "must not be empty");
                }
                cfg.filter.banned_words.insert(words[i]);
            }
        }
        cfg.filter.min_words = get_int(filter, "filter", "min_words", cfg.filter.min_words);
        cfg.filter.stopword_list_id =
            get_string(filter, "filter", "stopword_list", cfg.filter.stopword_list_id);
        cfg.filter.sentiment_rule_enabled = get_bool(filter, "filter", "sentiment_rule_enabled",
                                                     cfg.filter.sentiment_rule_enabled);
        cfg.filter.paraphrase_threshold = get_double(filter, "filter", "paraphrase_threshold",
                                                     cfg.filter.paraphrase_threshold);
        cfg.filter.paraphrase_per_seed =
            get_bool(filter, "filter", "paraphrase_per_seed", cfg.filter.paraphrase_per_seed);
    }

    if (root.contains("embedding")) {
        const json& embedding = root.at("embedding");
        check_object(embedding, "embedding", {"provider", "dimension", "salt", "table_file"});
        cfg.embedding.provider =
            get_string(embedding, "embedding", "provider", cfg.embedding.provider);
        cfg.embedding.dimension =
            get_size(embedding, "embedding", "dimension", cfg.embedding.dimension);
        cfg.embedding.salt = get_u64(embedding, "embedding", "salt", cfg.embedding.salt);
        cfg.embedding.table_file =
            get_string(embedding, "embedding", "table_file", cfg.embedding.table_file);
        if (!cfg.embedding.table_file.empty()) {
            cfg.embedding.resolved_table = resolve_path(base_dir, cfg.embedding.table_file);
        }
    }

    if (root.contains("sentiment")) {
        const json& sentiment = root.at("sentiment");
        check_object(sentiment, "sentiment", {"provider"});
        cfg.sentiment_provider =
            get_string(sentiment, "sentiment", "provider", cfg.sentiment_provider);
    }

    if (root.contains("selection")) {
        const json& selection = root.at("selection");
        check_object(selection, "selection", {"m_per_seed", "k_total"});
        cfg.selection.m_per_seed =
            get_int(selection, "selection", "m_per_seed", cfg.selection.m_per_seed);
        cfg.selection.k_total = get_int(selection, "selection", "k_total", cfg.selection.k_total);
    }

    if (root.contains("dataset")) {
        const json& dataset = root.at("dataset");
        check_object(dataset, "dataset",
                     {"name", "positive_target", "negative_target", "negative_sample_size",
                      "balance_classes", "negative_pool"});
        cfg.dataset.name = get_string(dataset, "dataset", "name", cfg.dataset.name);
        cfg.dataset.positive_target =
            get_size(dataset, "dataset", "positive_target", cfg.dataset.positive_target);
        cfg.dataset.negative_target =
            get_size(dataset, "dataset", "negative_target", cfg.dataset.negative_target);
        cfg.dataset.negative_sample_size =
            get_size(dataset, "dataset", "negative_sample_size", cfg.dataset.negative_sample_size);
        cfg.dataset.balance_classes =
            get_bool(dataset, "dataset", "balance_classes", cfg.dataset.balance_classes);
        if (dataset.contains("negative_pool")) {
            cfg.dataset.negative_pool =
                parse_sources(dataset.at("negative_pool"), "dataset.negative_pool", base_dir);
        }
    }

    if (root.contains("evaluation")) {
        const json& evaluation = root.at("evaluation");
        check_object(evaluation, "evaluation",
                     {"enabled", "classifier", "schedule", "extra_datasets", "test_corpora",
                      "folds", "svm"});
        cfg.evaluation.enabled =
            get_bool(evaluation, "evaluation", "enabled", cfg.evaluation.enabled);
        cfg.evaluation.classifier =
            get_string(evaluation, "evaluation", "classifier", cfg.evaluation.classifier);
        if (evaluation.contains("schedule")) {
            cfg.evaluation.schedule = get_string_array(evaluation, "evaluation", "schedule");
        }
        if (evaluation.contains("extra_datasets")) {
            const json& extra = evaluation.at("extra_datasets");
            if (!extra.is_object()) config_fail("evaluation.extra_datasets", "expected an object");
            for (const auto& item : extra.items()) {
                if (!item.value().is_string()) {
                    config_fail("evaluation.extra_datasets." + item.key(), "expected a string");
                }
                const std::string raw = item.value().get<std::string>();
                cfg.evaluation.extra_datasets[item.key()] = raw;
                cfg.evaluation.resolved_datasets[item.key()] = resolve_path(base_dir, raw);
            }
        }
        if (evaluation.contains("test_corpora")) {
            const json& corpora = evaluation.at("test_corpora");
            if (!corpora.is_array()) config_fail("evaluation.test_corpora", "expected an array");
            for (std::size_t i = 0; i < corpora.size(); ++i) {
                const std::string epath = "evaluation.test_corpora[" + std::to_string(i) + "]";
                const json& el = corpora.at(i);
                check_object(el, epath, {"name", "path", "format", "label_map", "balance"});
                TestCorpusSpec tc;
                tc.name = get_string(el, epath, "name", "");
                tc.path = get_string(el, epath, "path", "");
                if (tc.path.empty()) config_fail(epath + ".path", "must not be empty");
                tc.resolved = resolve_path(base_dir, tc.path);
                tc.format = get_string(el, epath, "format", tc.format);
                if (el.contains("label_map")) {
                    const json& lm = el.at("label_map");
                    if (!lm.is_object()) config_fail(epath + ".label_map", "expected an object");
                    tc.label_map.clear();
                    for (const auto& item : lm.items()) {
                        if (!item.value().is_string()) {
                            config_fail(epath + ".label_map." + item.key(), "expected a string");
                        }
                        tc.label_map[item.key()] = item.value().get<std::string>();
                    }
                }
                tc.balance = get_bool(el, epath, "balance", tc.balance);
                cfg.evaluation.test_corpora.push_back(std::move(tc));
            }
        }
        if (evaluation.contains("folds")) {
            const json& folds = evaluation.at("folds");
            check_object(folds, "evaluation.folds", {"folds", "n_per_class", "train_fraction"});
            cfg.evaluation.folds.folds =
                get_int(folds, "evaluation.folds", "folds", cfg.evaluation.folds.folds);
            cfg.evaluation.folds.n_per_class = get_int(folds, "evaluation.folds", "n_per_class",
                                                       cfg.evaluation.folds.n_per_class);
            cfg.evaluation.folds.train_fraction =
                get_double(folds, "evaluation.folds", "train_fraction",
                           cfg.evaluation.folds.train_fraction);
        }
        if (evaluation.contains("svm")) {
            const json& svm = evaluation.at("svm");
            check_object(svm, "evaluation.svm", {"C", "kernel", "gamma"});
            cfg.evaluation.svm.C = get_double(svm, "evaluation.svm", "C", cfg.evaluation.svm.C);
            cfg.evaluation.svm.kernel =
                parse_kernel(get_string(svm, "evaluation.svm", "kernel",
                                        kernel_name(cfg.evaluation.svm.kernel)),
                             "evaluation.svm.kernel");
            cfg.evaluation.svm.gamma =
                get_string(svm, "evaluation.svm", "gamma", cfg.evaluation.svm.gamma);
        }
    }
    if (cfg.evaluation.schedule.empty()) cfg.evaluation.schedule = {cfg.dataset.name};

    cfg.sampling.master_seed = cfg.master_seed;
    validate_run_config(cfg);
    return cfg;
}

RunConfig load_run_config(const fs::path& path) {
    const json root = read_json_file(path);
    return run_config_from_json(root, path.has_parent_path() ? path.parent_path() : fs::path("."));
}

json RunConfig::canonical_json() const {
    json root;
    root["variant"] = to_string(variant);
    root["master_seed"] = master_seed;

    json sources = json::array();
    for (const auto& s : corpus_sources) {
        json row;
        row["path"] = s.path;
        row["source_tag"] = s.source_tag;
        sources.push_back(row);
    }
    root["corpus"]["sources"] = sources;
    root["corpus"]["cleaning"]["spellcheck"] = cleaning.enable_spellcheck;
    root["corpus"]["cleaning"]["emoji_removal"] = cleaning.enable_emoji_removal;
    root["corpus"]["cleaning"]["link_removal"] = cleaning.enable_link_removal;
    root["corpus"]["cleaning"]["spam_removal"] = cleaning.enable_spam_removal;
    root["corpus"]["cleaning"]["dedup"] = cleaning.enable_dedup;

    root["seeds"]["file"] = seed_file;
    root["lexicon"]["file"] = lexicon_file;

    root["generator"]["backend"] = generator_backend;
    root["generator"]["training"]["learning_rate"] = training.learning_rate;
    root["generator"]["training"]["batch_size"] = training.batch_size;
    root["generator"]["training"]["steps"] = training.steps;
    root["generator"]["training"]["optimizer"] = training.optimizer_name;
    root["generator"]["training"]["model_name"] = training.model_name;
    root["generator"]["sampling"]["max_length"] = sampling.max_length;
    root["generator"]["sampling"]["temperature"] = sampling.temperature;
    root["generator"]["sampling"]["top_k"] = sampling.top_k;
    root["generator"]["sampling"]["top_p"] = sampling.top_p;
    root["generator"]["sampling"]["completions_per_seed"] = sampling.completions_per_seed;

    std::vector<std::string> banned(filter.banned_words.begin(), filter.banned_words.end());
    std::sort(banned.begin(), banned.end());
    root["filter"]["banned_words"] = banned;
    root["filter"]["min_words"] = filter.min_words;
    root["filter"]["stopword_list"] = filter.stopword_list_id;
    root["filter"]["sentiment_rule_enabled"] = filter.sentiment_rule_enabled;
    root["filter"]["paraphrase_threshold"] = filter.paraphrase_threshold;
    root["filter"]["paraphrase_per_seed"] = filter.paraphrase_per_seed;

    root["embedding"]["provider"] = embedding.provider;
    root["embedding"]["dimension"] = embedding.dimension;
    root["embedding"]["salt"] = embedding.salt;
    root["embedding"]["table_file"] = embedding.table_file;

    root["sentiment"]["provider"] = sentiment_provider;

    root["selection"]["m_per_seed"] = selection.m_per_seed;
    root["selection"]["k_total"] = selection.k_total;

    root["dataset"]["name"] = dataset.name;
    root["dataset"]["positive_target"] = dataset.positive_target;
    root["dataset"]["negative_target"] = dataset.negative_target;
    root["dataset"]["negative_sample_size"] = dataset.negative_sample_size;
    root["dataset"]["balance_classes"] = dataset.balance_classes;
    json pool = json::array();
    for (const auto& s : dataset.negative_pool) {
        json row;
        row["path"] = s.path;
        row["source_tag"] = s.source_tag;
        pool.push_back(row);
    }
    root["dataset"]["negative_pool"] = pool;

    json eval;
    eval["enabled"] = evaluation.enabled;
    eval["classifier"] = evaluation.classifier;
    eval["schedule"] = evaluation.schedule;
    json extra = json::object();
    for (const auto& [name, path] : evaluation.extra_datasets) extra[name] = path;
    eval["extra_datasets"] = extra;
    json corpora = json::array();
    for (const auto& tc : evaluation.test_corpora) {
        json row;
        row["name"] = tc.name;
        row["path"] = tc.path;
        row["format"] = tc.format;
        json label_map = json::object();
        for (const auto& [raw, mapped] : tc.label_map) label_map[raw] = mapped;
        row["label_map"] = label_map;
        row["balance"] = tc.balance;
        corpora.push_back(row);
    }
    eval["test_corpora"] = corpora;
    eval["folds"]["folds"] = evaluation.folds.folds;
    eval["folds"]["n_per_class"] = evaluation.folds.n_per_class;
    eval["folds"]["train_fraction"] = evaluation.folds.train_fraction;
    eval["svm"]["C"] = evaluation.svm.C;
    eval["svm"]["kernel"] = kernel_name(evaluation.svm.kernel);
    eval["svm"]["gamma"] = evaluation.svm.gamma;
    root["evaluation"] = eval;

    return root;
}

std::string RunConfig::config_hash() const {
    const std::uint64_t h = fnv1a64(canonical_json().dump());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

std::string RunConfig::effective_run_id() const {
    if (!run_id.empty()) return run_id;
    return "run-" + config_hash().substr(0, 12);
}

fs::path RunConfig::run_dir() const {
    return fs::path(output_dir) / effective_run_id();
}

json candidate_to_json(const Candidate& candidate) {
    json row;
    row["seed_id"] = candidate.seed_id;
    row["completion_index"] = candidate.completion_index;
    row["text"] = candidate.text;
    return row;
}

json scored_to_json(const ScoredCandidate& scored) {
    json row = candidate_to_json(scored.candidate);
    row["score"] = scored.score;
    return row;
}

json clean_sentence_to_json(const CleanSentence& sentence) {
    json row;
    row["sentence_id"] = sentence.sentence_id;
    row["text"] = sentence.text;
    row["source_tag"] = sentence.source_tag;
    row["token_count"] = sentence.token_count;
    return row;
}

namespace {

[[noreturn]] void row_fail(const fs::path& path, std::size_t row, const std::string& what) {
    throw DataError(path.string() + ": record " + std::to_string(row) + ": " + what);
}

} // namespace

std::vector<Candidate> load_candidates_jsonl(const fs::path& path) {
    const auto rows = read_jsonl(path);
    std::vector<Candidate> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const json& row = rows[i];
        if (row.is_discarded()) row_fail(path, i, "malformed JSON");
        try {
            out.push_back(Candidate{row.at("seed_id").get<int>(),
                                    row.at("completion_index").get<int>(),
                                    row.at("text").get<std::string>()});
        } catch (const json::exception& e) {
            row_fail(path, i, e.what());
        }
    }
    return out;
}

void save_candidates_jsonl(const fs::path& path, const std::vector<Candidate>& candidates) {
    std::vector<json> rows;
    rows.reserve(candidates.size());
    for (const auto& candidate : candidates) rows.push_back(candidate_to_json(candidate));
    write_jsonl(path, rows);
}

std::vector<ScoredCandidate> load_scored_jsonl(const fs::path& path) {
    const auto rows = read_jsonl(path);
    std::vector<ScoredCandidate> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const json& row = rows[i];
        if (row.is_discarded()) row_fail(path, i, "malformed JSON");
        try {
            ScoredCandidate scored;
            scored.candidate = Candidate{row.at("seed_id").get<int>(),
                                         row.at("completion_index").get<int>(),
                                         row.at("text").get<std::string>()};
            scored.score = row.at("score").get<double>();
            out.push_back(std::move(scored));
        } catch (const json::exception& e) {
            row_fail(path, i, e.what());
        }
    }
    return out;
}

void save_scored_jsonl(const fs::path& path, const std::vector<ScoredCandidate>& scored) {
    std::vector<json> rows;
    rows.reserve(scored.size());
    for (const auto& s : scored) rows.push_back(scored_to_json(s));
    write_jsonl(path, rows);
}

std::vector<CleanSentence> load_corpus_jsonl(const fs::path& path) {
    const auto rows = read_jsonl(path);
    std::vector<CleanSentence> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const json& row = rows[i];
        if (row.is_discarded()) row_fail(path, i, "malformed JSON");
        try {
            CleanSentence sentence;
            sentence.sentence_id = row.at("sentence_id").get<std::string>();
            sentence.text = row.at("text").get<std::string>();
            sentence.source_tag = row.at("source_tag").get<std::string>();
            sentence.token_count = row.at("token_count").get<std::size_t>();
            out.push_back(std::move(sentence));
        } catch (const json::exception& e) {
            row_fail(path, i, e.what());
        }
    }
    return out;
}

void save_corpus_jsonl(const fs::path& path, const std::vector<CleanSentence>& sentences) {
    std::vector<json> rows;
    rows.reserve(sentences.size());
    for (const auto& sentence : sentences) rows.push_back(clean_sentence_to_json(sentence));
    write_jsonl(path, rows);
}

PipelineRunner::PipelineRunner(RunConfig config)
    : config_(std::move(config)), run_dir_(config_.run_dir()) {}

json PipelineRunner::load_manifest() const {
    const fs::path path = run_dir_ / "manifest.json";
    if (!fs::exists(path)) return json::object();
    return read_json_file(path);
}

void PipelineRunner::store_stage_entry(Stage stage, const json& counts) {
    json manifest = load_manifest();
    const std::string hash = config_.config_hash();
    if (!manifest.is_object() || manifest.value("config_hash", "") != hash) {
        // A different config wrote this directory; its stage entries no
        // longer describe the artifacts we are about to produce.
        manifest = json::object();
        manifest["config_hash"] = hash;
        manifest["run_id"] = config_.effective_run_id();
        manifest["variant"] = to_string(config_.variant);
        manifest["master_seed"] = config_.master_seed;
        manifest["stages"] = json::object();
    }
    json entry;
    entry["stage_version"] = 1;
    entry["counts"] = counts;
    manifest["stages"][to_string(stage)] = entry;
    write_json_file(run_dir_ / "manifest.json", manifest);
}

bool PipelineRunner::up_to_date(Stage stage) const {
    const json manifest = load_manifest();
    if (!manifest.is_object() || manifest.value("config_hash", "") != config_.config_hash()) {
        return false;
    }
    if (!manifest.contains("stages") || !manifest.at("stages").contains(to_string(stage))) {
        return false;
    }
    const auto artifacts = stage_artifacts(stage);
    return std::all_of(artifacts.begin(), artifacts.end(),
                       [](const fs::path& p) { return fs::exists(p); });
}

std::vector<fs::path> PipelineRunner::stage_artifacts(Stage stage) const {
    switch (stage) {
        case Stage::INGEST:
            return {run_dir_ / "corpus" / "corpus.jsonl", run_dir_ / "corpus" / "stats.json",
                    run_dir_ / "corpus" / "negative_pool.jsonl",
                    run_dir_ / "corpus" / "negative_pool_stats.json"};
        case Stage::FINETUNE: return {run_dir_ / "model" / "handle.json"};
        case Stage::GENERATE:
            return {run_dir_ / "candidates" / "candidates.jsonl",
                    run_dir_ / "candidates" / "generation.json"};
        case Stage::FILTER:
            return {run_dir_ / "filtered" / "survivors.jsonl",
                    run_dir_ / "filtered" / "report.json"};
        case Stage::RANK: return {run_dir_ / "scored" / "scored.jsonl"};
        case Stage::ASSEMBLE:
            return {run_dir_ / "dataset" / "dataset.jsonl", run_dir_ / "dataset" / "manifest.json"};
        case Stage::EVALUATE: return {run_dir_ / "eval" / "metrics.jsonl"};
    }
    return {};
}

void PipelineRunner::require_artifact(const fs::path& path, Stage producer) const {
    if (!fs::exists(path)) {
        throw PreconditionError("missing artifact " + path.string() + "; run the " +
                                to_string(producer) + " stage first");
    }
}

StageResult PipelineRunner::run_stage(Stage stage, bool force) {
    fs::create_directories(run_dir_);
    if (!force && up_to_date(stage)) {
        const json manifest = load_manifest();
        StageResult result;
        result.stage = stage;
        result.skipped = true;
        result.counts = manifest.at("stages").at(to_string(stage)).at("counts");
        return result;
    }
    json counts;
    switch (stage) {
        case Stage::INGEST: counts = ingest_stage(); break;
        case Stage::FINETUNE: counts = finetune_stage(); break;
        case Stage::GENERATE: counts = generate_stage(); break;
        case Stage::FILTER: counts = filter_stage(); break;
        case Stage::RANK: counts = rank_stage(); break;
        case Stage::ASSEMBLE: counts = assemble_stage(); break;
        case Stage::EVALUATE: counts = evaluate_stage(); break;
    }
    store_stage_entry(stage, counts);
    StageResult result;
    result.stage = stage;
    result.skipped = false;
    result.counts = counts;
    return result;
}

std::vector<StageResult> PipelineRunner::run_range(Stage first, Stage last, bool force) {
    const auto& stages = all_stages();
    const auto first_it = std::find(stages.begin(), stages.end(), first);
    const auto last_it = std::find(stages.begin(), stages.end(), last);
    if (first_it > last_it) {
        throw ConfigError("stage range is reversed: " + to_string(first) + " comes after " +
                          to_string(last));
    }
    std::vector<StageResult> results;
    for (auto it = first_it; it <= last_it; ++it) results.push_back(run_stage(*it, force));
    return results;
}

std::vector<StageResult> PipelineRunner::run_all(bool force) {
    return run_range(all_stages().front(), all_stages().back(), force);
}

json PipelineRunner::ingest_stage() {
    const fs::path dir = run_dir_ / "corpus";

    std::vector<RawDocument> docs;
    std::size_t skipped = 0;
    for (const auto& source : config_.corpus_sources) {
        auto result = ingest(source.resolved, source.source_tag);
        skipped += result.skipped;
        std::move(result.documents.begin(), result.documents.end(), std::back_inserter(docs));
    }
    const BuildResult corpus = build_corpus(docs, config_.cleaning);
    save_corpus_jsonl(dir / "corpus.jsonl", corpus.sentences);
    json stats;
    stats["documents"] = corpus.stats.document_count;
    stats["sentences"] = corpus.stats.sentence_count;
    stats["tokens"] = corpus.stats.token_count;
    write_json_file(dir / "stats.json", stats);

    std::vector<RawDocument> pool_docs;
    std::size_t pool_skipped = 0;
    for (const auto& source : config_.dataset.negative_pool) {
        auto result = ingest(source.resolved, source.source_tag);
        pool_skipped += result.skipped;
        std::move(result.documents.begin(), result.documents.end(),
                  std::back_inserter(pool_docs));
    }
    const BuildResult pool = build_corpus(pool_docs, config_.cleaning);
    save_corpus_jsonl(dir / "negative_pool.jsonl", pool.sentences);
    json pool_stats;
    pool_stats["documents"] = pool.stats.document_count;
    pool_stats["sentences"] = pool.stats.sentence_count;
    pool_stats["tokens"] = pool.stats.token_count;
    write_json_file(dir / "negative_pool_stats.json", pool_stats);

    json counts;
    counts["documents"] = corpus.stats.document_count;
    counts["sentences"] = corpus.stats.sentence_count;
    counts["tokens"] = corpus.stats.token_count;
    counts["skipped_records"] = skipped;
    counts["duplicates_removed"] = corpus.duplicates_removed;
    counts["spam_removed"] = corpus.spam_removed;
    counts["pool_documents"] = pool.stats.document_count;
    counts["pool_sentences"] = pool.stats.sentence_count;
    counts["pool_skipped"] = pool_skipped;
    return counts;
}

json PipelineRunner::finetune_stage() {
    const fs::path dir = run_dir_ / "model";
    json handle_json;
    json counts;
    if (config_.variant == PipelineVariant::PRELIM) {
        // The preliminary variant never touches a generator; the artifact
        // records that explicitly so downstream stages can fail loudly if
        // they are pointed at the wrong run directory.
        handle_json["skipped"] = true;
        counts["corpus_sentences"] = 0;
    } else {
        auto backend = GeneratorRegistry::instance().create(config_.generator_backend);
        ModelHandle handle;
        std::size_t corpus_sentences = 0;
        if (config_.variant == PipelineVariant::DEXTER) {
            require_artifact(run_dir_ / "corpus" / "corpus.jsonl", Stage::INGEST);
            const auto corpus = load_corpus_jsonl(run_dir_ / "corpus" / "corpus.jsonl");
            corpus_sentences = corpus.size();
            handle = fine_tune(*backend, corpus, config_.training);
        } else {
            handle = backend->base_model();
        }
        handle_json["handle_id"] = handle.handle_id;
        handle_json["backend_id"] = handle.backend_id;
        handle_json["fine_tuned"] = handle.fine_tuned;
        counts["corpus_sentences"] = corpus_sentences;
    }
    write_json_file(dir / "handle.json", handle_json);
    return counts;
}

json PipelineRunner::generate_stage() {
    const fs::path dir = run_dir_ / "candidates";
    std::vector<Candidate> candidates;
    json info;
    int failures = 0;
    if (config_.variant == PipelineVariant::PRELIM) {
        require_artifact(run_dir_ / "corpus" / "corpus.jsonl", Stage::INGEST);
        const auto corpus = load_corpus_jsonl(run_dir_ / "corpus" / "corpus.jsonl");
        candidates.reserve(corpus.size());
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            candidates.push_back(Candidate{0, static_cast<int>(i), corpus[i].text});
        }
        info["seeds"] = 0;
        info["completions_per_seed"] = 0;
    } else {
        require_artifact(run_dir_ / "model" / "handle.json", Stage::FINETUNE);
        const json handle_json = read_json_file(run_dir_ / "model" / "handle.json");
        ModelHandle handle;
        try {
            handle.handle_id = handle_json.at("handle_id").get<std::string>();
            handle.backend_id = handle_json.at("backend_id").get<std::string>();
            handle.fine_tuned = handle_json.at("fine_tuned").get<bool>();
        } catch (const json::exception&) {
            throw DataError((run_dir_ / "model" / "handle.json").string() +
                            " does not describe a usable model handle");
        }
        if (handle.backend_id != config_.generator_backend) {
            throw DataError("model handle belongs to backend '" + handle.backend_id +
                            "' but the config names '" + config_.generator_backend + "'");
        }
        auto backend = GeneratorRegistry::instance().create(config_.generator_backend);
        const SeedSet seeds = load_configured_seeds();
        SamplingParams params = config_.sampling;
        params.master_seed = config_.master_seed;
        GenerationResult result = generate_completions(*backend, handle, seeds, params);
        candidates = std::move(result.candidates);
        failures = result.failures;
        info["seeds"] = seeds.seeds.size();
        info["completions_per_seed"] = params.completions_per_seed;
    }
    save_candidates_jsonl(dir / "candidates.jsonl", candidates);
    info["candidates"] = candidates.size();
    info["failures"] = failures;
    write_json_file(dir / "generation.json", info);

    json counts;
    counts["candidates"] = candidates.size();
    counts["failures"] = failures;
    return counts;
}

json PipelineRunner::filter_stage() {
    require_artifact(run_dir_ / "candidates" / "candidates.jsonl", Stage::GENERATE);
    const auto candidates = load_candidates_jsonl(run_dir_ / "candidates" / "candidates.jsonl");
    const auto embedder = make_embedder();
    const auto sentiment = make_sentiment();
    auto [survivors, report] = apply_filters(candidates, config_.filter, *sentiment, *embedder);
    save_candidates_jsonl(run_dir_ / "filtered" / "survivors.jsonl", survivors);
    write_json_file(run_dir_ / "filtered" / "report.json", report_to_json(report));

    json counts;
    counts["input"] = report.input_count;
    counts["survivors"] = report.survivor_count;
    json removed;
    for (std::size_t r = 0; r < report.removed_by_rule.size(); ++r) {
        removed["rule" + std::to_string(r + 1)] = report.removed_by_rule[r];
    }
    counts["removed"] = removed;
    return counts;
}

json PipelineRunner::rank_stage() {
    require_artifact(run_dir_ / "filtered" / "survivors.jsonl", Stage::FILTER);
    const auto survivors = load_candidates_jsonl(run_dir_ / "filtered" / "survivors.jsonl");
    const PersonalityLexicon lexicon = load_configured_lexicon();
    const auto embedder = make_embedder();
    std::vector<std::string> oov;
    const Vec lexvec = lexicon_vector(lexicon, *embedder, &oov);
    const auto selected = rank_and_select(survivors, lexvec, *embedder, config_.selection);
    save_scored_jsonl(run_dir_ / "scored" / "scored.jsonl", selected);

    json counts;
    counts["survivors"] = survivors.size();
    counts["selected"] = selected.size();
    counts["lexicon_words"] = lexicon.words.size();
    counts["lexicon_oov"] = oov.size();
    return counts;
}

json PipelineRunner::assemble_stage() {
    require_artifact(run_dir_ / "scored" / "scored.jsonl", Stage::RANK);
    require_artifact(run_dir_ / "corpus" / "negative_pool.jsonl", Stage::INGEST);
    const auto selection = load_scored_jsonl(run_dir_ / "scored" / "scored.jsonl");
    const auto pool = load_corpus_jsonl(run_dir_ / "corpus" / "negative_pool.jsonl");
    const PersonalityLexicon lexicon = load_configured_lexicon();
    const auto embedder = make_embedder();
    const auto sentiment = make_sentiment();
    const Vec lexvec = lexicon_vector(lexicon, *embedder);
    const std::string variant_name = to_string(config_.variant);

    AugmentedDataset dataset;
    dataset.name = config_.dataset.name;
    std::size_t positive_shortfall = 0;
    dataset.positives = assemble_positive(selection, config_.dataset.positive_target,
                                          variant_name + ":ranked", &positive_shortfall);

    std::unordered_set<std::string> exclude;
    for (const auto& sentence : dataset.positives) exclude.insert(sentence.text);

    auto negatives = assemble_negative(
        pool, lexvec, *embedder, *sentiment, config_.filter, config_.dataset.negative_sample_size,
        config_.dataset.negative_target, derive_seed(config_.master_seed, fnv1a64("negatives"), 0),
        variant_name + ":background", &exclude);
    dataset.negatives = std::move(negatives.negatives);

    if (config_.dataset.balance_classes &&
        dataset.positives.size() != dataset.negatives.size()) {
        const std::size_t keep = std::min(dataset.positives.size(), dataset.negatives.size());
        dataset.positives.resize(keep);
        dataset.negatives.resize(keep);
    }

    dataset.manifest.name = config_.dataset.name;
    dataset.manifest.variant = config_.variant;
    dataset.manifest.config_hash = config_.config_hash();
    dataset.manifest.master_seed = config_.master_seed;
    dataset.manifest.counts.positives = dataset.positives.size();
    dataset.manifest.counts.negatives = dataset.negatives.size();
    dataset.manifest.counts.positive_shortfall = positive_shortfall;
    dataset.manifest.counts.negative_shortfall = negatives.shortfall;
    if (config_.variant == PipelineVariant::DEXTER) dataset.manifest.fine_tuned = true;
    if (config_.variant == PipelineVariant::DEXTER_MINUS) dataset.manifest.fine_tuned = false;

    save_dataset_jsonl(run_dir_ / "dataset" / "dataset.jsonl", dataset);
    write_json_file(run_dir_ / "dataset" / "manifest.json", manifest_to_json(dataset.manifest));

    json counts;
    counts["positives"] = dataset.manifest.counts.positives;
    counts["negatives"] = dataset.manifest.counts.negatives;
    counts["positive_shortfall"] = positive_shortfall;
    counts["negative_shortfall"] = negatives.shortfall;
    counts["negative_sampled"] = negatives.sampled;
    return counts;
}

json PipelineRunner::evaluate_stage() {
    const fs::path dir = run_dir_ / "eval";
    if (!config_.evaluation.enabled) {
        write_jsonl(dir / "metrics.jsonl", {});
        json counts;
        counts["enabled"] = false;
        counts["corpora"] = 0;
        return counts;
    }

    std::vector<LabeledDataset> schedule;
    for (const auto& name : config_.evaluation.schedule) {
        if (name == config_.dataset.name) {
            require_artifact(run_dir_ / "dataset" / "dataset.jsonl", Stage::ASSEMBLE);
            schedule.push_back(load_dataset_jsonl(run_dir_ / "dataset" / "dataset.jsonl", name));
        } else {
            schedule.push_back(
                load_dataset_jsonl(config_.evaluation.resolved_datasets.at(name), name));
        }
    }
    auto backend = ClassifierRegistry::instance().create(config_.evaluation.classifier);
    const TrainedScorer scorer = train_scorer(backend, TrainingSchedule{schedule});

    std::vector<json> rows;
    std::size_t users_scored = 0;
    for (const auto& tc : config_.evaluation.test_corpora) {
        TestCorpusLoad loaded = load_test_corpus(tc.resolved, tc.format, tc.label_map);
        std::vector<UserRecord> users = std::move(loaded.users);
        if (tc.balance) {
            users = balance_downsample(
                users, derive_seed(config_.master_seed, fnv1a64("balance:" + tc.name), 0));
        }
        std::vector<ScoredUser> scored;
        scored.reserve(users.size());
        for (const auto& user : users) {
            scored.push_back(
                ScoredUser{user.user_id, psycho_score(scorer, user).score, user.label});
        }
        users_scored += scored.size();
        FoldConfig fold = config_.evaluation.folds;
        fold.master_seed = derive_seed(config_.master_seed, fnv1a64("eval:" + tc.name), 0);
        const EvalMetrics metrics = cross_validate(scored, fold, config_.evaluation.svm);
        rows.push_back(metrics_to_json(scorer.tag, tc.name, metrics, fold));
    }
    write_jsonl(dir / "metrics.jsonl", rows);

    json counts;
    counts["enabled"] = true;
    counts["corpora"] = config_.evaluation.test_corpora.size();
    counts["metrics_rows"] = rows.size();
    counts["users_scored"] = users_scored;
    return counts;
}

SeedSet PipelineRunner::load_configured_seeds() const {
    if (config_.seed_file.empty()) return default_seed_set();
    return load_seeds(config_.resolved_seed_file.string());
}

PersonalityLexicon PipelineRunner::load_configured_lexicon() const {
    if (config_.lexicon_file.empty()) return default_lexicon();
    return load_lexicon(config_.resolved_lexicon_file.string());
}

std::unique_ptr<Embedder> PipelineRunner::make_embedder() const {
    if (config_.embedding.provider == "table") {
        return std::make_unique<TableEmbedder>(
            TableEmbedder::from_json_file(config_.embedding.resolved_table));
    }
    return std::make_unique<HashedEmbedder>(config_.embedding.dimension, config_.embedding.salt);
}

std::unique_ptr<SentimentProvider> PipelineRunner::make_sentiment() const {
    return std::make_unique<LexiconSentiment>();
}

} // namespace pedant
