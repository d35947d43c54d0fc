#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace pedant {

using Vec = std::vector<double>;

double l2_norm(const Vec& v);
Vec l2_normalized(Vec v);

// dot(u,v) / (|u||v|); 0 when either vector is zero, so scores stay NaN-free.
// Mismatched dimensions are a programming error.
double cosine(const Vec& u, const Vec& v);

// Embedding provider. Word lookups may miss (out-of-vocabulary); sentence
// embeddings default to the normalized mean of the non-stop-word token
// vectors, which a whole-sentence encoder implementation may override.
class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::size_t dimension() const = 0;
    virtual std::optional<Vec> embed_word(const std::string& word) const = 0;
    virtual Vec embed_sentence(const std::string& text) const;
};

// Mean of the embeddings of the non-stop-word tokens (case-folded,
// punctuation-stripped), L2-normalized. All-stop-word or all-OOV input yields
// the zero vector.
Vec mean_token_vector(const std::string& text, const Embedder& embedder);

// Deterministic pseudo-random unit vectors keyed by the folded word. Every
// word is in-vocabulary, which keeps the full pipeline hermetic.
class HashedEmbedder final : public Embedder {
public:
    explicit HashedEmbedder(std::size_t dimension = 64, std::uint64_t salt = 0);
    std::size_t dimension() const override { return dimension_; }
    std::optional<Vec> embed_word(const std::string& word) const override;

private:
    std::size_t dimension_;
    std::uint64_t salt_;
};

// Fixed word->vector table, e.g. for fixtures or exported embeddings.
// Unknown words are out-of-vocabulary.
class TableEmbedder final : public Embedder {
public:
    TableEmbedder(std::size_t dimension, std::unordered_map<std::string, Vec> table);
    static TableEmbedder from_json_file(const std::filesystem::path& path);
    std::size_t dimension() const override { return dimension_; }
    std::optional<Vec> embed_word(const std::string& word) const override;

private:
    std::size_t dimension_;
    std::unordered_map<std::string, Vec> table_;
};

} // namespace pedant
