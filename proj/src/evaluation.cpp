#include "pedant/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "pedant/corpus.hpp"
#include "pedant/errors.hpp"
#include "pedant/rng.hpp"

namespace pedant {

namespace {

std::string capitalize(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

double resolve_gamma(const SVMConfig& config, const std::vector<double>& features) {
    if (config.gamma == "scale") return gamma_scale(features);
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(config.gamma, &consumed);
    } catch (const std::exception&) {
        throw ConfigError("svm gamma must be \"scale\" or a number, got '" + config.gamma + "'");
    }
    if (consumed != config.gamma.size() || !(value > 0.0)) {
        throw ConfigError("svm gamma must be \"scale\" or a positive number, got '" +
                          config.gamma + "'");
    }
    return value;
}

std::string canonical_label_value(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer()) return std::to_string(value.get<long long>());
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    return value.dump();
}

} // namespace

TrainedScorer train_scorer(std::shared_ptr<ClassifierBackend> backend,
                           const TrainingSchedule& schedule) {
    if (!backend) throw ConfigError("no classifier backend supplied");
    if (schedule.stages.empty()) {
        throw ConfigError("training schedule needs at least one dataset stage");
    }
    for (const auto& stage : schedule.stages) {
        if (stage.sentences.empty()) {
            throw ConfigError("training stage '" + stage.name + "' resolved to no sentences");
        }
    }
    backend->train(schedule.stages);

    TrainedScorer scorer;
    scorer.tag = capitalize(schedule.stages.back().name) + "@" + backend->backend_id() +
                 std::string(schedule.stages.size() - 1, '+');
    scorer.backend = std::move(backend);
    return scorer;
}

PsychoScore psycho_score(const TrainedScorer& scorer, const UserRecord& user) {
    if (user.sentences.empty()) {
        throw PreconditionError("user '" + user.user_id + "' has no sentences to score");
    }
    std::vector<double> values;
    values.reserve(user.sentences.size());
    for (const auto& sentence : user.sentences) {
        values.push_back(scorer.score(sentence));
    }
    // Summing in sorted order makes the mean bit-identical under any
    // permutation of the sentences.
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    return PsychoScore{user.user_id, sum / static_cast<double>(values.size())};
}

std::vector<UserRecord> balance_downsample(const std::vector<UserRecord>& users,
                                           std::uint64_t master_seed) {
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
    for (const auto& user : users) {
        (user.label == Label::POSITIVE ? n_pos : n_neg) += 1;
    }
    if (n_pos == 0 || n_neg == 0) {
        throw DataError("balance_downsample needs both classes present (positives=" +
                        std::to_string(n_pos) + ", negatives=" + std::to_string(n_neg) + ")");
    }
    if (n_pos == n_neg) return users;

    const Label majority = n_pos > n_neg ? Label::POSITIVE : Label::NEGATIVE;
    const std::size_t majority_count = std::max(n_pos, n_neg);
    const std::size_t minority_count = std::min(n_pos, n_neg);

    Rng rng(derive_seed(master_seed, fnv1a64("balance-downsample"), 0));
    const auto draw = sample_without_replacement(majority_count, minority_count, rng);
    std::vector<bool> keep_majority(majority_count, false);
    for (std::size_t index : draw) keep_majority[index] = true;

    std::vector<UserRecord> out;
    out.reserve(2 * minority_count);
    std::size_t majority_position = 0;
    for (const auto& user : users) {
        if (user.label == majority) {
            if (keep_majority[majority_position++]) out.push_back(user);
        } else {
            out.push_back(user);
        }
    }
    return out;
}

EvalMetrics metrics_from_confusion(std::size_t tp, std::size_t fp, std::size_t fn,
                                   std::size_t tn) {
    auto ratio = [](std::size_t num, std::size_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    auto f1_of = [](double precision, double recall) {
        const double denom = precision + recall;
        return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
    };

    EvalMetrics metrics;
    metrics.precision = ratio(tp, tp + fp);
    metrics.recall = ratio(tp, tp + fn);
    metrics.f1 = f1_of(metrics.precision, metrics.recall);
    const double neg_precision = ratio(tn, tn + fn);
    const double neg_recall = ratio(tn, tn + fp);
    const double neg_f1 = f1_of(neg_precision, neg_recall);
    metrics.macro_f1 = (metrics.f1 + neg_f1) / 2.0;
    metrics.macro_f1_std = 0.0;
    return metrics;
}

EvalMetrics cross_validate(const std::vector<ScoredUser>& scores, const FoldConfig& fold_config,
                           const SVMConfig& svm_config) {
    if (fold_config.folds < 1) throw ConfigError("folds must be >= 1");
    if (fold_config.n_per_class < 5) throw ConfigError("n_per_class must be >= 5");
    if (!(fold_config.train_fraction > 0.0 && fold_config.train_fraction < 1.0)) {
        throw ConfigError("train_fraction must be in (0, 1)");
    }
    if (!(svm_config.C > 0.0)) throw ConfigError("svm C must be > 0");

    std::vector<std::size_t> pos_pool;
    std::vector<std::size_t> neg_pool;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        (scores[i].label == Label::POSITIVE ? pos_pool : neg_pool).push_back(i);
    }
    const std::size_t n = static_cast<std::size_t>(fold_config.n_per_class);
    if (pos_pool.size() < n) {
        throw DataError("class positive has " + std::to_string(pos_pool.size()) +
                        " scored users but n_per_class=" + std::to_string(n));
    }
    if (neg_pool.size() < n) {
        throw DataError("class negative has " + std::to_string(neg_pool.size()) +
                        " scored users but n_per_class=" + std::to_string(n));
    }

    std::size_t n_train = static_cast<std::size_t>(
        std::llround(fold_config.train_fraction * static_cast<double>(n)));
    n_train = std::clamp<std::size_t>(n_train, 1, n - 1);

    Rng rng(derive_seed(fold_config.master_seed, fnv1a64("cross-validate"), 0));

    double sum_precision = 0.0;
    double sum_recall = 0.0;
    double sum_f1 = 0.0;
    std::vector<double> fold_macro;
    fold_macro.reserve(static_cast<std::size_t>(fold_config.folds));

    for (int fold = 0; fold < fold_config.folds; ++fold) {
        const auto pos_draw = sample_without_replacement(pos_pool.size(), n, rng);
        const auto neg_draw = sample_without_replacement(neg_pool.size(), n, rng);

        std::vector<double> train_x;
        std::vector<int> train_y;
        std::vector<double> test_x;
        std::vector<int> test_y;
        train_x.reserve(2 * n_train);
        train_y.reserve(2 * n_train);
        for (std::size_t i = 0; i < n; ++i) {
            const double pos_score = scores[pos_pool[pos_draw[i]]].score;
            const double neg_score = scores[neg_pool[neg_draw[i]]].score;
            if (i < n_train) {
                train_x.push_back(pos_score);
                train_y.push_back(1);
                train_x.push_back(neg_score);
                train_y.push_back(-1);
            } else {
                test_x.push_back(pos_score);
                test_y.push_back(1);
                test_x.push_back(neg_score);
                test_y.push_back(-1);
            }
        }

        double mean = 0.0;
        for (double v : train_x) mean += v;
        mean /= static_cast<double>(train_x.size());
        double var = 0.0;
        for (double v : train_x) var += (v - mean) * (v - mean);
        var /= static_cast<double>(train_x.size());
        const double sigma = var > 0.0 ? std::sqrt(var) : 1.0;
        for (double& v : train_x) v = (v - mean) / sigma;

        SvmParams params;
        params.C = svm_config.C;
        params.kernel = svm_config.kernel;
        params.gamma = resolve_gamma(svm_config, train_x);
        const ScalarSvm model = ScalarSvm::train(train_x, train_y, params);

        std::size_t tp = 0;
        std::size_t fp = 0;
        std::size_t fn = 0;
        std::size_t tn = 0;
        for (std::size_t i = 0; i < test_x.size(); ++i) {
            const int predicted = model.predict((test_x[i] - mean) / sigma);
            if (test_y[i] == 1) {
                (predicted == 1 ? tp : fn) += 1;
            } else {
                (predicted == 1 ? fp : tn) += 1;
            }
        }
        const EvalMetrics fold_metrics = metrics_from_confusion(tp, fp, fn, tn);
        sum_precision += fold_metrics.precision;
        sum_recall += fold_metrics.recall;
        sum_f1 += fold_metrics.f1;
        fold_macro.push_back(fold_metrics.macro_f1);
    }

    const double folds = static_cast<double>(fold_config.folds);
    EvalMetrics metrics;
    metrics.precision = sum_precision / folds;
    metrics.recall = sum_recall / folds;
    metrics.f1 = sum_f1 / folds;
    double macro_mean = 0.0;
    for (double m : fold_macro) macro_mean += m;
    macro_mean /= folds;
    metrics.macro_f1 = macro_mean;
    double macro_var = 0.0;
    for (double m : fold_macro) macro_var += (m - macro_mean) * (m - macro_mean);
    metrics.macro_f1_std = std::sqrt(macro_var / folds);
    return metrics;
}

TestCorpusLoad load_test_corpus(const std::filesystem::path& path, const std::string& format_id,
                                const std::unordered_map<std::string, std::string>& label_map) {
    const bool user_grouped = format_id == "user_grouped_jsonl";
    if (!user_grouped && format_id != "message_level_jsonl") {
        throw ConfigError("unknown test corpus format '" + format_id + "'");
    }

    TestCorpusLoad result;
    std::size_t line_no = 0;
    for (const auto& row : read_jsonl(path)) {
        ++line_no;
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (row.is_discarded() || !row.is_object()) {
            throw DataError(where + ": malformed test corpus record");
        }

        UserRecord user;
        try {
            if (user_grouped) {
                user.user_id = row.at("user_id").get<std::string>();
                for (const auto& s : row.at("sentences")) {
                    auto text = s.get<std::string>();
                    if (!text.empty()) user.sentences.push_back(std::move(text));
                }
            } else {
                user.user_id = row.at("message_id").get<std::string>();
                user.sentences = segment_sentences(row.at("text").get<std::string>());
            }

            const std::string raw_label = canonical_label_value(row.at("label"));
            auto it = label_map.find(raw_label);
            if (it == label_map.end()) {
                throw DataError(where + ": label '" + raw_label + "' has no mapping");
            }
            if (it->second == "drop") {
                ++result.dropped_by_label;
                continue;
            }
            if (it->second != "positive" && it->second != "negative") {
                throw ConfigError("label map values must be positive/negative/drop, got '" +
                                  it->second + "'");
            }
            user.label = label_from_string(it->second);
        } catch (const json::exception& e) {
            throw DataError(where + ": " + e.what());
        }

        if (user.sentences.empty()) {
            ++result.skipped_users;
            continue;
        }
        result.users.push_back(std::move(user));
    }
    return result;
}

json metrics_to_json(const std::string& model_name, const std::string& dataset,
                     const EvalMetrics& metrics, const FoldConfig& fold_config) {
    return json{{"model_name", model_name},
                {"dataset", dataset},
                {"precision", metrics.precision},
                {"recall", metrics.recall},
                {"f1", metrics.f1},
                {"macro_f1", metrics.macro_f1},
                {"macro_f1_std", metrics.macro_f1_std},
                {"fold_config",
                 json{{"folds", fold_config.folds},
                      {"n_per_class", fold_config.n_per_class},
                      {"train_fraction", fold_config.train_fraction}}},
                {"seed", fold_config.master_seed}};
}

} // namespace pedant
