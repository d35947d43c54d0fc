#include "pedant/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <regex>

namespace pedant {

namespace {

bool is_space_byte(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_word_char(unsigned char c) {
    return std::isalnum(c) != 0 || c == '\'';
}

// Decodes one UTF-8 codepoint starting at i. Returns false on an invalid
// sequence, in which case the caller should skip one byte.
bool decode_utf8(std::string_view s, std::size_t i, char32_t& cp, std::size_t& len) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        cp = b0;
        len = 1;
        return true;
    }
    auto cont = [&](std::size_t k) {
        return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(1)) {
        cp = (static_cast<char32_t>(b0 & 0x1F) << 6) |
             (static_cast<unsigned char>(s[i + 1]) & 0x3F);
        len = 2;
        return cp >= 0x80;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        cp = (static_cast<char32_t>(b0 & 0x0F) << 12) |
             ((static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6) |
             (static_cast<unsigned char>(s[i + 2]) & 0x3F);
        len = 3;
        return cp >= 0x800;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        cp = (static_cast<char32_t>(b0 & 0x07) << 18) |
             ((static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12) |
             ((static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6) |
             (static_cast<unsigned char>(s[i + 3]) & 0x3F);
        len = 4;
        return cp >= 0x10000 && cp <= 0x10FFFF;
    }
    return false;
}

void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_unicode_space(char32_t cp) {
    return cp == 0x00A0 || (cp >= 0x2000 && cp <= 0x200B) || cp == 0x202F ||
           cp == 0x205F || cp == 0x3000 || cp == 0xFEFF;
}

} // namespace

std::string fold_case(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space_byte(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_space_byte(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) out.emplace_back(text.substr(start, i - start));
    }
    return out;
}

std::size_t token_count(std::string_view text) {
    std::size_t n = 0;
    bool in_token = false;
    for (unsigned char c : text) {
        if (is_space_byte(c)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++n;
        }
    }
    return n;
}

std::string strip_punct(std::string_view token) {
    // Typographic marks we strip alongside ASCII punctuation.
    static const std::array<std::string_view, 8> kMarks = {
        "‘", "’", "“", "”", "–", "—", "…", "«"};
    auto is_stripped_prefix = [&](std::string_view rest, std::size_t& n) {
        if (!rest.empty() && std::ispunct(static_cast<unsigned char>(rest.front()))) {
            n = 1;
            return true;
        }
        for (auto m : kMarks) {
            if (rest.substr(0, m.size()) == m) {
                n = m.size();
                return true;
            }
        }
        return false;
    };
    std::string_view v = token;
    std::size_t n = 0;
    while (is_stripped_prefix(v, n)) v.remove_prefix(n);
    auto is_stripped_suffix = [&](std::string_view rest, std::size_t& k) {
        if (!rest.empty() && std::ispunct(static_cast<unsigned char>(rest.back()))) {
            k = 1;
            return true;
        }
        for (auto m : kMarks) {
            if (rest.size() >= m.size() && rest.substr(rest.size() - m.size()) == m) {
                k = m.size();
                return true;
            }
        }
        return false;
    };
    std::size_t k = 0;
    while (is_stripped_suffix(v, k)) v.remove_suffix(k);
    return std::string(v);
}

std::string normalize_token(std::string_view token) {
    return fold_case(strip_punct(token));
}

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && is_space_byte(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && is_space_byte(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    bool seen_content = false;
    for (unsigned char c : s) {
        if (is_space_byte(c)) {
            pending_space = seen_content;
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            seen_content = true;
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

std::string remove_links(const std::string& s) {
    static const std::regex kUrl(R"((?:(?:https?|ftp)://|www\.)\S+)",
                                 std::regex::icase | std::regex::optimize);
    return std::regex_replace(s, kUrl, " ");
}

bool is_emoji_codepoint(char32_t cp) {
    return (cp >= 0x1F000 && cp <= 0x1FAFF) ||  // pictographs, emoticons, symbols
           (cp >= 0x2600 && cp <= 0x27BF) ||    // misc symbols and dingbats
           (cp >= 0x2B00 && cp <= 0x2BFF) ||    // stars, geometric shapes
           (cp >= 0xFE00 && cp <= 0xFE0F) ||    // variation selectors
           (cp >= 0x1F900 && cp <= 0x1F9FF) ||
           cp == 0x200D || cp == 0x20E3 ||
           cp == 0x203C || cp == 0x2049 ||
           cp == 0x231A || cp == 0x231B ||
           (cp >= 0x23E9 && cp <= 0x23F3) ||
           (cp >= 0x23F8 && cp <= 0x23FA);
}

std::string remove_emoji(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        char32_t cp = 0;
        std::size_t len = 1;
        if (!decode_utf8(s, i, cp, len)) {
            ++i;  // invalid byte, drop it
            continue;
        }
        i += len;
        if (is_emoji_codepoint(cp)) continue;
        if (is_unicode_space(cp)) {
            out.push_back(' ');
            continue;
        }
        encode_utf8(cp, out);
    }
    return out;
}

bool contains_word(std::string_view text, std::string_view word) {
    if (word.empty()) return false;
    std::size_t pos = 0;
    while ((pos = text.find(word, pos)) != std::string_view::npos) {
        bool left_ok = pos == 0 || !is_word_char(static_cast<unsigned char>(text[pos - 1]));
        std::size_t end = pos + word.size();
        bool right_ok = end >= text.size() || !is_word_char(static_cast<unsigned char>(text[end]));
        if (left_ok && right_ok) return true;
        ++pos;
    }
    return false;
}

const std::vector<std::string>& english_stopword_list() {
    static const std::vector<std::string> kList = {
        "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're",
        "you've", "you'll", "you'd", "your", "yours", "yourself", "yourselves", "he",
        "him", "his", "himself", "she", "she's", "her", "hers", "herself", "it",
        "it's", "its", "itself", "they", "them", "their", "theirs", "themselves",
        "what", "which", "who", "whom", "this", "that", "that'll", "these", "those",
        "am", "is", "are", "was", "were", "be", "been", "being", "have", "has",
        "had", "having", "do", "does", "did", "doing", "a", "an", "the", "and",
        "but", "if", "or", "because", "as", "until", "while", "of", "at", "by",
        "for", "with", "about", "against", "between", "into", "through", "during",
        "before", "after", "above", "below", "to", "from", "up", "down", "in",
        "out", "on", "off", "over", "under", "again", "further", "then", "once",
        "here", "there", "when", "where", "why", "how", "all", "any", "both",
        "each", "few", "more", "most", "other", "some", "such", "no", "nor",
        "not", "only", "own", "same", "so", "than", "too", "very", "s", "t",
        "can", "will", "just", "don", "don't", "should", "should've", "now", "d",
        "ll", "m", "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn",
        "couldn't", "didn", "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn",
        "hasn't", "haven", "haven't", "isn", "isn't", "ma", "mightn", "mightn't",
        "mustn", "mustn't", "needn", "needn't", "shan", "shan't", "shouldn",
        "shouldn't", "wasn", "wasn't", "weren", "weren't", "won", "won't",
        "wouldn", "wouldn't"};
    return kList;
}

const std::unordered_set<std::string>& english_stopwords() {
    static const std::unordered_set<std::string> kSet(english_stopword_list().begin(),
                                                      english_stopword_list().end());
    return kSet;
}

bool is_stopword(std::string_view folded_token) {
    return english_stopwords().count(std::string(folded_token)) > 0;
}

} // namespace pedant
