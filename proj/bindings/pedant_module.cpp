#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pedant/corpus.hpp"
#include "pedant/embedding.hpp"
#include "pedant/errors.hpp"
#include "pedant/evaluation.hpp"
#include "pedant/filtering.hpp"
#include "pedant/generation.hpp"
#include "pedant/pipeline.hpp"
#include "pedant/ranking.hpp"
#include "pedant/sentiment.hpp"

namespace py = pybind11;

namespace {

py::object json_to_py(const pedant::json& value) {
    using pedant::json;
    switch (value.type()) {
        case json::value_t::boolean: return py::bool_(value.get<bool>());
        case json::value_t::number_integer: return py::int_(value.get<std::int64_t>());
        case json::value_t::number_unsigned: return py::int_(value.get<std::uint64_t>());
        case json::value_t::number_float: return py::float_(value.get<double>());
        case json::value_t::string: return py::str(value.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& item : value) out.append(json_to_py(item));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (const auto& item : value.items()) {
                out[py::str(item.key())] = json_to_py(item.value());
            }
            return out;
        }
        default: return py::none();
    }
}

std::vector<pedant::Candidate> wrap_texts(const std::vector<std::string>& texts) {
    std::vector<pedant::Candidate> candidates;
    candidates.reserve(texts.size());
    for (std::size_t i = 0; i < texts.size(); ++i) {
        candidates.push_back(pedant::Candidate{0, static_cast<int>(i), texts[i]});
    }
    return candidates;
}

py::dict filter_texts(const std::vector<std::string>& texts, int min_words,
                      const std::vector<std::string>& banned_words, double paraphrase_threshold,
                      std::size_t dimension) {
    pedant::FilterConfig config;
    if (!banned_words.empty()) {
        config.banned_words.clear();
        config.banned_words.insert(banned_words.begin(), banned_words.end());
    }
    config.min_words = min_words;
    config.paraphrase_threshold = paraphrase_threshold;
    const pedant::HashedEmbedder embedder(dimension);
    const pedant::LexiconSentiment sentiment;
    auto [survivors, report] =
        pedant::apply_filters(wrap_texts(texts), config, sentiment, embedder);

    py::list kept;
    py::list kept_indices;
    for (const auto& candidate : survivors) {
        kept.append(py::str(candidate.text));
        kept_indices.append(py::int_(candidate.completion_index));
    }
    py::dict removed;
    for (std::size_t r = 0; r < report.removed_by_rule.size(); ++r) {
        removed[py::str("rule" + std::to_string(r + 1))] = py::int_(report.removed_by_rule[r]);
    }
    py::dict out;
    out["survivors"] = kept;
    out["kept_indices"] = kept_indices;
    out["removed_by_rule"] = removed;
    return out;
}

std::vector<double> score_texts(const std::vector<std::string>& texts,
                                const std::vector<std::string>& lexicon_words,
                                std::size_t dimension) {
    const pedant::HashedEmbedder embedder(dimension);
    pedant::PersonalityLexicon lexicon;
    if (lexicon_words.empty()) {
        lexicon = pedant::default_lexicon();
    } else {
        lexicon.name = "custom";
        lexicon.words = lexicon_words;
    }
    const pedant::Vec lexvec = pedant::lexicon_vector(lexicon, embedder);
    std::vector<double> scores;
    scores.reserve(texts.size());
    for (const auto& text : texts) {
        scores.push_back(pedant::cosine(pedant::sentence_vector(text, embedder), lexvec));
    }
    return scores;
}

py::dict metrics_dict(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
    const pedant::EvalMetrics m = pedant::metrics_from_confusion(tp, fp, fn, tn);
    py::dict out;
    out["precision"] = m.precision;
    out["recall"] = m.recall;
    out["f1"] = m.f1;
    out["macro_f1"] = m.macro_f1;
    return out;
}

py::list seeds_to_py(const pedant::SeedSet& seeds) {
    py::list out;
    for (const auto& seed : seeds.seeds) {
        py::dict row;
        row["seed_id"] = seed.seed_id;
        row["category"] = pedant::to_string(seed.belief_category);
        row["text"] = seed.text;
        out.append(row);
    }
    return out;
}

py::dict run_pipeline(const std::string& config_path, const std::string& stage, bool force,
                      const std::string& out_dir) {
    pedant::RunConfig config = pedant::load_run_config(config_path);
    if (!out_dir.empty()) config.output_dir = out_dir;
    pedant::PipelineRunner runner(std::move(config));
    std::vector<pedant::StageResult> results;
    if (stage == "all") {
        results = runner.run_all(force);
    } else {
        results.push_back(runner.run_stage(pedant::stage_from_string(stage), force));
    }
    py::dict stages;
    for (const auto& result : results) {
        stages[py::str(pedant::to_string(result.stage))] = json_to_py(result.counts);
    }
    py::dict out;
    out["run_dir"] = runner.run_dir().string();
    out["config_hash"] = runner.config().config_hash();
    out["stages"] = stages;
    return out;
}

} // namespace

PYBIND11_MODULE(_pedant, m) {
    m.doc() = "personality data augmentation pipeline";

    py::register_exception<pedant::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<pedant::DataError>(m, "DataError", PyExc_ValueError);

    m.def(
        "clean_text",
        [](const std::string& text) { return pedant::clean_text(text, pedant::CleaningConfig{}); },
        py::arg("text"), "Normalize raw text: drop links and emoji, collapse whitespace.");
    m.def("segment_sentences", &pedant::segment_sentences, py::arg("text"),
          "Split text into sentences on terminal punctuation.");
    m.def("cosine", &pedant::cosine, py::arg("u"), py::arg("v"),
          "Cosine similarity; zero vectors score 0.");
    m.def(
        "paraphrase_keep_indices",
        [](const std::vector<std::string>& texts, double threshold, std::size_t dimension) {
            const pedant::HashedEmbedder embedder(dimension);
            return pedant::paraphrase_filter(texts, embedder, threshold);
        },
        py::arg("texts"), py::arg("threshold") = 0.9, py::arg("dimension") = 64,
        "Greedy near-duplicate screen; returns the indices kept.");
    m.def("filter_texts", &filter_texts, py::arg("texts"), py::arg("min_words") = 3,
          py::arg("banned_words") = std::vector<std::string>{},
          py::arg("paraphrase_threshold") = 0.9, py::arg("dimension") = 64,
          "Run the full removal-rule stack over the texts.");
    m.def("score_texts", &score_texts, py::arg("texts"),
          py::arg("lexicon_words") = std::vector<std::string>{}, py::arg("dimension") = 64,
          "Cosine relevance of each text against the anchor lexicon.");
    m.def("metrics_from_confusion", &metrics_dict, py::arg("tp"), py::arg("fp"), py::arg("fn"),
          py::arg("tn"), "Precision, recall, F1 and macro-F1 from one confusion matrix.");
    m.def(
        "load_seeds",
        [](const std::string& path) { return seeds_to_py(pedant::load_seeds(path)); },
        py::arg("path"), "Parse a seed sentence file.");
    m.def(
        "default_seeds", [] { return seeds_to_py(pedant::default_seed_set()); },
        "The packaged seed sentences.");
    m.def(
        "default_lexicon_words", [] { return pedant::default_lexicon().words; },
        "The packaged anchor lexicon.");
    m.def("run", &run_pipeline, py::arg("config_path"), py::arg("stage") = "all",
          py::arg("force") = false, py::arg("out") = "",
          "Run pipeline stages from a config file; returns per-stage counts.");
}
