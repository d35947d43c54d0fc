#include "pedant/corpus.hpp"

#include <fstream>
#include <regex>
#include <unordered_set>

#include "pedant/errors.hpp"
#include "pedant/jsonl.hpp"
#include "pedant/text.hpp"

namespace pedant {

const Speller& noop_speller() {
    static const NoopSpeller kSpeller;
    return kSpeller;
}

IngestResult ingest(const std::filesystem::path& path, const std::string& source_tag) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path.string());
    IngestResult result;
    std::string raw;
    std::size_t line_number = 0;
    while (std::getline(in, raw)) {
        const std::size_t line = line_number++;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.find_first_not_of(" \t") == std::string::npos) continue;
        const json record = json::parse(raw, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            ++result.skipped;
            continue;
        }
        auto it = record.find("text");
        if (it == record.end() || !it->is_string() || it->get<std::string>().empty()) {
            ++result.skipped;
            continue;
        }
        RawDocument doc;
        doc.doc_id = source_tag + ":" + std::to_string(line);
        doc.source_tag = source_tag;
        doc.text = it->get<std::string>();
        for (const char* key : {"source", "author", "created_at"}) {
            auto m = record.find(key);
            if (m != record.end() && m->is_string()) doc.metadata[key] = m->get<std::string>();
        }
        result.documents.push_back(std::move(doc));
    }
    return result;
}

std::string clean_text(const std::string& text, const CleaningConfig& config,
                       const Speller& speller) {
    std::string s = text;
    if (config.enable_link_removal) s = remove_links(s);
    if (config.enable_emoji_removal) s = remove_emoji(s);
    s = collapse_whitespace(s);
    if (config.enable_spellcheck) s = collapse_whitespace(speller.normalize(s));
    return s;
}

std::vector<std::string> segment_sentences(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    const std::size_t n = text.size();
    std::size_t i = 0;
    auto is_terminal = [](char c) { return c == '.' || c == '!' || c == '?'; };
    auto emit = [&](std::size_t from, std::size_t to) {
        while (from < to && text[from] == ' ') ++from;
        while (to > from && text[to - 1] == ' ') --to;
        if (to > from) out.push_back(text.substr(from, to - from));
    };
    while (i < n) {
        if (is_terminal(text[i])) {
            std::size_t end = i + 1;
            while (end < n && is_terminal(text[end])) ++end;
            if (end >= n || text[end] == ' ') {
                emit(start, end);
                start = end;
                i = end;
                continue;
            }
            i = end;
            continue;
        }
        ++i;
    }
    emit(start, n);
    return out;
}

const std::vector<std::string>& default_spam_patterns() {
    static const std::vector<std::string> kPatterns = {
        R"(\[deleted\])",
        R"(\[removed\])",
        R"(^i am a bot\b)",
        R"(\bthis action was performed automatically\b)",
        R"(\bplease contact the moderators\b)",
        R"(\bupvote\b.*\bsubscribe\b)",
        R"(\bclick here\b.*\bfree\b)",
    };
    return kPatterns;
}

bool is_spam_sentence(const std::string& sentence, const std::vector<std::string>& patterns) {
    const std::string folded = fold_case(sentence);
    for (const auto& p : patterns) {
        std::regex re(p, std::regex::icase);
        if (std::regex_search(folded, re)) return true;
    }
    return false;
}

BuildResult build_corpus(const std::vector<RawDocument>& docs, const CleaningConfig& config,
                         const Speller& speller) {
    BuildResult result;
    result.stats.document_count = docs.size();
    std::unordered_set<std::string> seen;
    for (const auto& doc : docs) {
        const std::string cleaned = clean_text(doc.text, config, speller);
        const std::vector<std::string> sentences = segment_sentences(cleaned);
        for (std::size_t k = 0; k < sentences.size(); ++k) {
            const std::string& sentence = sentences[k];
            if (config.enable_spam_removal && is_spam_sentence(sentence)) {
                ++result.spam_removed;
                continue;
            }
            if (config.enable_dedup) {
                const std::string key = fold_case(sentence);
                if (!seen.insert(key).second) {
                    ++result.duplicates_removed;
                    continue;
                }
            }
            CleanSentence cs;
            cs.sentence_id = doc.doc_id + "#" + std::to_string(k);
            cs.text = sentence;
            cs.source_tag = doc.source_tag;
            cs.token_count = token_count(sentence);
            result.stats.sentence_count += 1;
            result.stats.token_count += cs.token_count;
            result.sentences.push_back(std::move(cs));
        }
    }
    return result;
}

} // namespace pedant
