#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "pedant/datasets.hpp"

namespace pedant {

// Sentence scorer provider. train() consumes the schedule stages in order;
// score() maps a sentence to a positive-class probability in [0, 1].
class ClassifierBackend {
public:
    virtual ~ClassifierBackend() = default;
    virtual std::string backend_id() const = 0;
    virtual void train(const std::vector<LabeledDataset>& stages) = 0;
    virtual double score(const std::string& text) const = 0;
};

// Deterministic lexical scorer used for hermetic runs. A sentence scores the
// maximum of its per-word weights: anchor keywords are pinned high, words
// seen in training get a Laplace positive-rate estimate, everything else sits
// at the neutral 0.5.
class LexicalClassifier final : public ClassifierBackend {
public:
    LexicalClassifier();
    explicit LexicalClassifier(std::vector<std::string> keywords);

    std::string backend_id() const override { return "lexical"; }
    void train(const std::vector<LabeledDataset>& stages) override;
    double score(const std::string& text) const override;

private:
    struct WordStats {
        std::size_t positive = 0;
        std::size_t negative = 0;
    };
    std::unordered_map<std::string, WordStats> stats_;
    std::unordered_map<std::string, bool> keyword_;
};

using ClassifierFactory = std::function<std::shared_ptr<ClassifierBackend>()>;

class ClassifierRegistry {
public:
    static ClassifierRegistry& instance();
    void register_backend(const std::string& id, ClassifierFactory factory);
    std::shared_ptr<ClassifierBackend> create(const std::string& id) const;
    bool contains(const std::string& id) const;

private:
    ClassifierRegistry();
    std::unordered_map<std::string, ClassifierFactory> factories_;
};

} // namespace pedant
