#include "pedant/embedding.hpp"

#include <cmath>
#include <stdexcept>

#include "pedant/errors.hpp"
#include "pedant/jsonl.hpp"
#include "pedant/rng.hpp"
#include "pedant/text.hpp"

namespace pedant {

double l2_norm(const Vec& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

Vec l2_normalized(Vec v) {
    const double norm = l2_norm(v);
    if (norm > 0.0) {
        for (double& x : v) x /= norm;
    }
    return v;
}

double cosine(const Vec& u, const Vec& v) {
    if (u.size() != v.size()) {
        throw std::logic_error("cosine: dimension mismatch " + std::to_string(u.size()) +
                               " vs " + std::to_string(v.size()));
    }
    double dot = 0.0;
    double nu = 0.0;
    double nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

Vec mean_token_vector(const std::string& text, const Embedder& embedder) {
    Vec sum(embedder.dimension(), 0.0);
    std::size_t used = 0;
    for (const auto& raw : tokenize(text)) {
        const std::string tok = normalize_token(raw);
        if (tok.empty() || is_stopword(tok)) continue;
        const auto vec = embedder.embed_word(tok);
        if (!vec) continue;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*vec)[i];
        ++used;
    }
    if (used == 0) return Vec(embedder.dimension(), 0.0);
    for (double& x : sum) x /= static_cast<double>(used);
    return l2_normalized(std::move(sum));
}

Vec Embedder::embed_sentence(const std::string& text) const {
    return mean_token_vector(text, *this);
}

HashedEmbedder::HashedEmbedder(std::size_t dimension, std::uint64_t salt)
    : dimension_(dimension), salt_(salt) {
    if (dimension_ == 0) throw ConfigError("embedding dimension must be >= 1");
}

std::optional<Vec> HashedEmbedder::embed_word(const std::string& word) const {
    Rng rng(hash_combine(fnv1a64(fold_case(word)), salt_));
    Vec v(dimension_);
    for (double& x : v) x = rng.next_unit() * 2.0 - 1.0;
    Vec unit = l2_normalized(std::move(v));
    if (l2_norm(unit) == 0.0) unit[0] = 1.0;
    return unit;
}

TableEmbedder::TableEmbedder(std::size_t dimension, std::unordered_map<std::string, Vec> table)
    : dimension_(dimension), table_(std::move(table)) {
    if (dimension_ == 0) throw ConfigError("embedding dimension must be >= 1");
    for (const auto& [word, vec] : table_) {
        if (vec.size() != dimension_)
            throw ConfigError("embedding table entry '" + word + "' has dimension " +
                              std::to_string(vec.size()) + ", expected " +
                              std::to_string(dimension_));
    }
}

TableEmbedder TableEmbedder::from_json_file(const std::filesystem::path& path) {
    const json doc = read_json_file(path);
    if (!doc.is_object() || doc.empty())
        throw ConfigError("embedding table must be a non-empty JSON object: " + path.string());
    std::unordered_map<std::string, Vec> table;
    std::size_t dim = 0;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!it.value().is_array())
            throw ConfigError("embedding table entry '" + it.key() + "' must be an array");
        Vec v = it.value().get<Vec>();
        if (dim == 0) dim = v.size();
        table[fold_case(it.key())] = std::move(v);
    }
    return TableEmbedder(dim, std::move(table));
}

std::optional<Vec> TableEmbedder::embed_word(const std::string& word) const {
    auto it = table_.find(fold_case(word));
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

} // namespace pedant
