#pragma once

// Watermarked sequence generation over a pluggable model. Each position:
// compute logits, derive the keyed partition from the last h tokens, decide
// the polarity, boost the logits of list1 by delta (both polarities boost
// list1; the polarity only decides whether list1 is called green or red),
// then sample. Thresholded schemes skip the boost when the position's spike
// entropy does not exceed tau.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bimark/model.hpp"
#include "bimark/params.hpp"
#include "bimark/partition.hpp"

namespace bimark {

struct GreedySampler {};
struct MultinomialSampler {
    double temperature = 0.7;
};
using Sampler = std::variant<GreedySampler, MultinomialSampler>;

std::string sampler_name(const Sampler& sampler);

struct GenerationConfig {
    WatermarkParams params;
    Sampler sampler = MultinomialSampler{0.7};
    int max_tokens = 200;
    std::vector<TokenId> prompt;
    uint64_t sampler_seed = 0;

    // Modulus for the recorded spike-entropy trace. Defaults to the
    // bound modulus of (gamma, delta); overriding it lets unwatermarked
    // corpora carry traces compatible with a chosen detector configuration.
    std::optional<double> entropy_modulus;

    double effective_entropy_modulus() const;
    void validate() const;
};

struct GenerationTrace {
    std::vector<TokenId> tokens;
    std::vector<Polarity> polarities;       // one per token
    std::vector<uint8_t> green_flags;       // one per token
    std::vector<double> entropies;          // pre-bias spike entropy, one per token
    std::vector<uint64_t> prob_hashes;      // audit hash of the pre-bias distribution
    std::vector<TokenId> prompt;            // the context the sequence was seeded with

    double mean_entropy() const;
};

/// Adds delta to exactly the list1 entries of `logits`, leaving the rest
/// untouched. Throws ShapeError on a length mismatch.
void apply_bipolar_bias(std::span<double> logits, const PartitionOutcome& outcome, double delta);

/// Runs the generation loop for cfg.max_tokens positions. The prompt must
/// supply at least h tokens of context; prompt tokens are never biased or
/// scored. Deterministic given (model spec, cfg).
GenerationTrace generate(const Model& model, const GenerationConfig& cfg);

/// Unwatermarked control: `generate` with delta = 0 (the human-text
/// surrogate). The entropy-trace modulus is resolved from cfg's (gamma,
/// delta) before the bias is zeroed, so the trace stays comparable with the
/// watermarked corpus it controls for.
GenerationTrace generate_null(const Model& model, GenerationConfig cfg);

} // namespace bimark
