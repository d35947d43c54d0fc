#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace pedant {

struct RawDocument {
    std::string doc_id;
    std::string source_tag;
    std::string text;
    std::map<std::string, std::string> metadata;
};

struct CleanSentence {
    std::string sentence_id;
    std::string text;
    std::string source_tag;
    std::size_t token_count = 0;
};

struct CleaningConfig {
    bool enable_spellcheck = true;
    bool enable_emoji_removal = true;
    bool enable_link_removal = true;
    bool enable_spam_removal = true;
    bool enable_dedup = true;
};

struct CorpusStats {
    std::size_t document_count = 0;
    std::size_t sentence_count = 0;
    std::size_t token_count = 0;
};

// Spelling-normalizer provider. The default implementation is a no-op so the
// core stays deterministic; a real spell checker can be plugged in behind it.
class Speller {
public:
    virtual ~Speller() = default;
    virtual std::string normalize(const std::string& text) const = 0;
};

class NoopSpeller final : public Speller {
public:
    std::string normalize(const std::string& text) const override { return text; }
};

const Speller& noop_speller();

struct IngestResult {
    std::vector<RawDocument> documents;
    std::size_t skipped = 0;
};

// Reads a JSONL file whose records carry a `text` field. Document ids are
// `<source_tag>:<line_number>` with 0-based physical line numbers, so ids stay
// stable when malformed records are skipped.
IngestResult ingest(const std::filesystem::path& path, const std::string& source_tag);

// Total function: link removal, emoji removal, whitespace collapse, optional
// spelling normalization. A string that loses all content comes back empty.
std::string clean_text(const std::string& text, const CleaningConfig& config,
                       const Speller& speller = noop_speller());

// Splits on runs of . ! ? followed by whitespace or end of string. The
// punctuation stays on each sentence; no empty sentences are emitted.
std::vector<std::string> segment_sentences(const std::string& text);

// Moderation boilerplate and bot-signature patterns dropped at sentence level
// when spam removal is enabled.
const std::vector<std::string>& default_spam_patterns();
bool is_spam_sentence(const std::string& sentence,
                      const std::vector<std::string>& patterns = default_spam_patterns());

struct BuildResult {
    std::vector<CleanSentence> sentences;
    CorpusStats stats;
    std::size_t duplicates_removed = 0;
    std::size_t spam_removed = 0;
};

// Cleans, segments, spam-screens and deduplicates every document in order.
// Dedup key is case-folded text; first occurrence wins.
BuildResult build_corpus(const std::vector<RawDocument>& docs, const CleaningConfig& config,
                         const Speller& speller = noop_speller());

} // namespace pedant
