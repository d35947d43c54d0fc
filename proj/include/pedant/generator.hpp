#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "pedant/corpus.hpp"

namespace pedant {

struct TrainingConfig {
    std::string backend_id = "mock";
    double learning_rate = 0.0001;
    int batch_size = 4;
    int steps = 10000;
    std::string optimizer_name = "adafactor";
    std::string model_name = "1558M";
};

struct SamplingParams {
    int max_length = 50; // generated tokens, prompt excluded
    double temperature = 0.7;
    int top_k = 50;
    double top_p = 0.90;
    int completions_per_seed = 200;
    std::uint64_t master_seed = 0;
};

struct ModelHandle {
    std::string handle_id;
    std::string backend_id;
    bool fine_tuned = false;
};

class GeneratorBackend {
public:
    virtual ~GeneratorBackend() = default;
    virtual std::string backend_id() const = 0;
    virtual ModelHandle fine_tune(const std::vector<CleanSentence>& corpus,
                                  const TrainingConfig& config) = 0;
    virtual ModelHandle base_model() = 0;
    // One sampled continuation for the prompt. Implementations must be pure
    // functions of (handle, prompt, params, rng_seed) or declare otherwise.
    virtual std::string complete(const ModelHandle& model, const std::string& prompt,
                                 const SamplingParams& params, std::uint64_t rng_seed) = 0;
    // Backends that are unsafe under concurrent complete() calls keep the
    // default of 1; the scheduler never exceeds this.
    virtual int max_concurrency() const { return 1; }
};

// Stand-in generator used for tests and hermetic runs. Samples words from
// fixed banks; the distribution is keyed on the model (base vs fine-tuned,
// and the fingerprint of the corpus it was tuned on), the prompt and the
// per-call seed, so outputs are deterministic yet model-sensitive.
class MockGenerator final : public GeneratorBackend {
public:
    std::string backend_id() const override { return "mock"; }
    ModelHandle fine_tune(const std::vector<CleanSentence>& corpus,
                          const TrainingConfig& config) override;
    ModelHandle base_model() override;
    std::string complete(const ModelHandle& model, const std::string& prompt,
                         const SamplingParams& params, std::uint64_t rng_seed) override;
    int max_concurrency() const override { return 8; }

private:
    std::uint64_t fingerprint_for(const ModelHandle& model) const;
    std::unordered_map<std::string, std::uint64_t> fingerprints_;
};

using GeneratorFactory = std::function<std::shared_ptr<GeneratorBackend>()>;

// String id -> provider. "mock" is pre-registered; real backends register
// themselves at startup.
class GeneratorRegistry {
public:
    static GeneratorRegistry& instance();
    void register_backend(const std::string& id, GeneratorFactory factory);
    std::shared_ptr<GeneratorBackend> create(const std::string& id) const;
    bool contains(const std::string& id) const;

private:
    GeneratorRegistry();
    std::unordered_map<std::string, GeneratorFactory> factories_;
};

} // namespace pedant
