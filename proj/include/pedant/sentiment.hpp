#pragma once

#include <string>
#include <unordered_set>

namespace pedant {

struct SentimentScores {
    double positive = 0.0;
    double negative = 0.0;
    double neutral = 1.0;
};

class SentimentProvider {
public:
    virtual ~SentimentProvider() = default;
    virtual SentimentScores score(const std::string& text) const = 0;
};

// Bundled lexicon scorer: the positive/negative components are the fractions
// of tokens found in small fixed valence word lists, neutral is the rest.
class LexiconSentiment final : public SentimentProvider {
public:
    LexiconSentiment();
    LexiconSentiment(std::unordered_set<std::string> positive_words,
                     std::unordered_set<std::string> negative_words);
    SentimentScores score(const std::string& text) const override;

private:
    std::unordered_set<std::string> positive_;
    std::unordered_set<std::string> negative_;
};

const std::unordered_set<std::string>& default_positive_words();
const std::unordered_set<std::string>& default_negative_words();

} // namespace pedant
