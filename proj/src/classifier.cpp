#include "pedant/classifier.hpp"

#include <algorithm>

#include "pedant/errors.hpp"
#include "pedant/ranking.hpp"
#include "pedant/text.hpp"

namespace pedant {

LexicalClassifier::LexicalClassifier() : LexicalClassifier(default_lexicon().words) {}

LexicalClassifier::LexicalClassifier(std::vector<std::string> keywords) {
    for (auto& word : keywords) keyword_[fold_case(word)] = true;
}

void LexicalClassifier::train(const std::vector<LabeledDataset>& stages) {
    for (const auto& stage : stages) {
        for (const auto& sentence : stage.sentences) {
            for (const auto& raw : tokenize(sentence.text)) {
                const std::string word = normalize_token(raw);
                if (word.empty()) continue;
                auto& stats = stats_[word];
                if (sentence.label == Label::POSITIVE) {
                    ++stats.positive;
                } else {
                    ++stats.negative;
                }
            }
        }
    }
}

double LexicalClassifier::score(const std::string& text) const {
    double best = 0.0;
    bool any = false;
    for (const auto& raw : tokenize(text)) {
        const std::string word = normalize_token(raw);
        if (word.empty()) continue;
        any = true;
        double weight = 0.5;
        if (keyword_.count(word)) {
            weight = 0.9;
        } else if (auto it = stats_.find(word); it != stats_.end()) {
            weight = (static_cast<double>(it->second.positive) + 1.0) /
                     (static_cast<double>(it->second.positive + it->second.negative) + 2.0);
        }
        best = std::max(best, weight);
    }
    return any ? best : 0.5;
}

ClassifierRegistry::ClassifierRegistry() {
    factories_["lexical"] = [] { return std::make_shared<LexicalClassifier>(); };
}

ClassifierRegistry& ClassifierRegistry::instance() {
    static ClassifierRegistry registry;
    return registry;
}

void ClassifierRegistry::register_backend(const std::string& id, ClassifierFactory factory) {
    factories_[id] = std::move(factory);
}

std::shared_ptr<ClassifierBackend> ClassifierRegistry::create(const std::string& id) const {
    auto it = factories_.find(id);
    if (it == factories_.end()) {
        throw ConfigError("unknown classifier backend '" + id + "'");
    }
    return it->second();
}

bool ClassifierRegistry::contains(const std::string& id) const {
    return factories_.count(id) != 0;
}

} // namespace pedant
