#include <doctest.h>

#include "pedant/filtering.hpp"
#include "pedant/sentiment.hpp"

using namespace pedant;

TEST_CASE("LexiconSentiment reports valence word fractions") {
    const LexiconSentiment scorer({"lovely"}, {"terrible"});

    const SentimentScores negative = scorer.score("this is terrible");
    CHECK(negative.negative == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(negative.positive == 0.0);
    CHECK(negative.neutral == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    const SentimentScores mixed = scorer.score("lovely but terrible");
    CHECK(mixed.positive == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(mixed.negative == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("scoring is case-insensitive and punctuation-tolerant") {
    const LexiconSentiment scorer({}, {"terrible"});
    CHECK(scorer.score("Absolutely TERRIBLE!").negative ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("empty text is fully neutral") {
    const LexiconSentiment scorer({}, {});
    const SentimentScores scores = scorer.score("");
    CHECK(scores.positive == 0.0);
    CHECK(scores.negative == 0.0);
    CHECK(scores.neutral == 1.0);
}

TEST_CASE("default valence lists carry the expected vocabulary") {
    const auto& positive = default_positive_words();
    const auto& negative = default_negative_words();
    CHECK(positive.count("wonderful") == 1);
    CHECK(positive.count("happy") == 1);
    CHECK(positive.count("love") == 1);
    CHECK(negative.count("terrible") == 1);
    CHECK(negative.count("hurt") == 1);
    CHECK(negative.count("monster") == 1);
    for (const auto& word : positive) CHECK(negative.count(word) == 0);
}

TEST_CASE("sentiment_keep requires strictly more negative than positive") {
    CHECK(sentiment_keep(SentimentScores{0.0, 0.2, 0.8}));
    CHECK_FALSE(sentiment_keep(SentimentScores{0.2, 0.2, 0.6}));
    CHECK_FALSE(sentiment_keep(SentimentScores{0.3, 0.1, 0.6}));
    CHECK_FALSE(sentiment_keep(SentimentScores{0.0, 0.0, 1.0}));
}

TEST_CASE("default LexiconSentiment separates clearly valenced text") {
    const LexiconSentiment scorer;
    CHECK(sentiment_keep(scorer.score("A terrible monster hunts tonight")));
    CHECK_FALSE(sentiment_keep(scorer.score("What a wonderful happy day")));
}
