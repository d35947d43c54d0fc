#include "pedant/sentiment.hpp"

#include "pedant/text.hpp"

namespace pedant {

namespace {

std::unordered_set<std::string> make_positive_words() {
    return {
        "good", "great", "happy", "love", "loved", "loving", "wonderful",
        "best", "better", "nice", "kind", "kindness", "beautiful", "enjoy",
        "enjoyed", "fun", "glad", "joy", "joyful", "hope", "hopeful",
        "amazing", "awesome", "excellent", "fantastic", "perfect", "pleasant",
        "delight", "delightful", "warm", "friendly", "gentle", "caring",
        "trust", "trusted", "safe", "calm", "peace", "peaceful", "smile",
        "smiled", "laugh", "laughed", "proud", "brave", "sweet", "charming",
        "win", "winner", "success", "successful", "thank", "thanks",
        "grateful", "comfort", "comfortable", "bright", "pleasure", "like",
        "liked", "likes", "favorite", "helpful", "support", "supportive",
    };
}

std::unordered_set<std::string> make_negative_words() {
    return {
        "bad", "worse", "worst", "hate", "hated", "hateful", "terrible",
        "horrible", "awful", "sad", "angry", "anger", "rage", "fear",
        "afraid", "scared", "scary", "pain", "painful", "hurt", "hurts",
        "hurting", "cruel", "cruelty", "kill", "killed", "killing", "killer",
        "murder", "murdered", "murderer", "death", "dead", "die", "died",
        "dying", "blood", "bleed", "bleeding", "violent", "violence",
        "torture", "tortured", "victim", "victims", "evil", "monster",
        "monsters", "dangerous", "danger", "threat", "threaten", "liar",
        "lie", "lied", "lies", "lying", "manipulate", "manipulated",
        "manipulative", "prison", "criminal", "crime", "rapist", "rape",
        "insane", "crazy", "sadistic", "psychopath", "sociopath",
        "antisocial", "narcissistic", "terrify", "terrified", "terrorize",
        "hunt", "hunted", "prey", "weak", "weakness", "worthless", "useless",
        "stupid", "idiot", "fool", "disgust", "disgusting", "wrong", "guilt",
        "guilty", "shame", "ashamed", "suffer", "suffering", "destroy",
        "destroyed", "ruin", "ruined", "broken", "alone", "lonely", "cold",
        "dark", "darkness", "nothing", "never", "abuse", "abused", "cry",
        "cried", "scream", "screamed", "screaming", "enemy", "enemies",
        "revenge", "regret", "remorse", "pathetic", "miserable", "misery",
    };
}

} // namespace

LexiconSentiment::LexiconSentiment()
    : positive_(default_positive_words()), negative_(default_negative_words()) {}

LexiconSentiment::LexiconSentiment(std::unordered_set<std::string> positive_words,
                                   std::unordered_set<std::string> negative_words)
    : positive_(std::move(positive_words)), negative_(std::move(negative_words)) {}

SentimentScores LexiconSentiment::score(const std::string& text) const {
    auto tokens = tokenize(text);
    if (tokens.empty()) return SentimentScores{};
    std::size_t pos = 0;
    std::size_t neg = 0;
    std::size_t total = 0;
    for (const auto& tok : tokens) {
        auto word = normalize_token(tok);
        if (word.empty()) continue;
        ++total;
        if (positive_.count(word)) ++pos;
        if (negative_.count(word)) ++neg;
    }
    if (total == 0) return SentimentScores{};
    SentimentScores scores;
    scores.positive = static_cast<double>(pos) / static_cast<double>(total);
    scores.negative = static_cast<double>(neg) / static_cast<double>(total);
    scores.neutral = 1.0 - scores.positive - scores.negative;
    if (scores.neutral < 0.0) scores.neutral = 0.0;
    return scores;
}

const std::unordered_set<std::string>& default_positive_words() {
    static const std::unordered_set<std::string> words = make_positive_words();
    return words;
}

const std::unordered_set<std::string>& default_negative_words() {
    static const std::unordered_set<std::string> words = make_negative_words();
    return words;
}

} // namespace pedant
