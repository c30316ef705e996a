#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>

#include "bimark/params.hpp"

namespace bimark {

/// Pluggable autoregressive model: logits over the vocabulary given the
/// token context. Implementations must be pure functions of the context so
/// generation runs are replayable.
class Model {
public:
    virtual ~Model() = default;
    virtual int vocab_size() const noexcept = 0;
    /// Fills `out` (size vocab_size) with finite logits for the next token.
    virtual void next_logits(std::span<const TokenId> context, std::span<double> out) const = 0;
};

// Entropy profiles for the synthetic model. Uniform gives flat logits at
// every position. Peaked puts `concentration` logits on one context-derived
// token. Mixed draws each position near-deterministic with probability
// low_entropy_fraction and near-uniform otherwise, emulating code-like text.
struct UniformProfile {};
struct PeakedProfile {
    double concentration = 10.0;
};
struct MixedProfile {
    double low_entropy_fraction = 0.5;
    double concentration = 10.0;
};

using EntropyProfile = std::variant<UniformProfile, PeakedProfile, MixedProfile>;

struct SyntheticModelSpec {
    int vocab_size = 1024;
    EntropyProfile profile = UniformProfile{};
    uint64_t rng_seed = 1;

    void validate() const;
};

std::string profile_name(const EntropyProfile& profile);

/// Deterministic toy model: the position's distribution is derived by hashing
/// (rng_seed, context length, last token), so regenerating with the same spec
/// and context reproduces it exactly.
std::unique_ptr<Model> make_synthetic_model(const SyntheticModelSpec& spec);

} // namespace bimark
