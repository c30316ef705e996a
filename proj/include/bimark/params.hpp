#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bimark/errors.hpp"

namespace bimark {

using TokenId = int32_t;

/// Secret key material. Identical bytes yield identical partitions for
/// identical context; at least 16 bytes are recommended.
struct WatermarkKey {
    std::vector<uint8_t> bytes;

    static WatermarkKey from_hex(std::string_view hex);
    std::string to_hex() const;
};

enum class Polarity : uint8_t { Positive, Negative };

inline const char* polarity_name(Polarity p) noexcept {
    return p == Polarity::Positive ? "positive" : "negative";
}

// Polarity assignment policies. PseudoRandom draws from the position's seeded
// stream (after the shuffle) so generator and detector agree with no side
// channel; the other two are hard-coded by scored position index.
struct PseudoRandomPolarity {
    double rho = 0.5; // P(positive), in (0,1)
};
struct PositionCyclePolarity {
    int k_pos = 20;
    int k_neg = 20;
};
struct HardSplitPolarity {
    double rho = 0.5;
    int total_tokens = 200; // first round(rho * total_tokens) positions are positive
};

using PolarityPolicy = std::variant<PseudoRandomPolarity, PositionCyclePolarity, HardSplitPolarity>;

std::string policy_name(const PolarityPolicy& policy);
void validate_policy(const PolarityPolicy& policy);

struct PartitionParams {
    double gamma = 0.5;   // fraction of the vocabulary in list1, in (0,1)
    int vocab_size = 2;   // >= 2
    int context_width = 1; // h: number of preceding tokens hashed into the seed

    /// |list1| = round-half-up(gamma * vocab_size).
    int list1_size() const noexcept {
        return static_cast<int>(gamma * static_cast<double>(vocab_size) + 0.5);
    }

    void validate() const;
};

enum class Scheme : uint8_t { Kgw, BiMarker, Sweet, SweetBi, Ewd, EwdBi };

inline constexpr Scheme kAllSchemes[] = {Scheme::Kgw,   Scheme::BiMarker, Scheme::Sweet,
                                         Scheme::SweetBi, Scheme::Ewd,     Scheme::EwdBi};

const char* scheme_name(Scheme s) noexcept;
std::optional<Scheme> scheme_from_name(std::string_view name) noexcept;

/// Differential (pole-difference) statistic?
inline constexpr bool is_bipolar(Scheme s) noexcept {
    return s == Scheme::BiMarker || s == Scheme::SweetBi || s == Scheme::EwdBi;
}
/// Needs a per-token entropy trace at detection time?
inline constexpr bool uses_entropy(Scheme s) noexcept {
    return s == Scheme::Sweet || s == Scheme::SweetBi || s == Scheme::Ewd || s == Scheme::EwdBi;
}
/// Entropy-thresholded (scores only tokens with entropy > tau)?
inline constexpr bool is_thresholded(Scheme s) noexcept {
    return s == Scheme::Sweet || s == Scheme::SweetBi;
}
/// Entropy-weighted?
inline constexpr bool is_weighted(Scheme s) noexcept {
    return s == Scheme::Ewd || s == Scheme::EwdBi;
}

/// Everything generation and detection must share.
struct WatermarkParams {
    double gamma = 0.5;
    double delta = 2.0;          // logit bias ("watermark strength"); alpha = exp(delta)
    WatermarkKey key;
    int context_width = 1;       // h
    int vocab_size = 1024;
    PolarityPolicy policy = PseudoRandomPolarity{0.5};
    Scheme scheme = Scheme::BiMarker;
    double threshold = 4.0;      // z verdict threshold
    double tau = 0.695;          // entropy threshold for SWEET variants

    PartitionParams partition() const noexcept {
        return PartitionParams{gamma, vocab_size, context_width};
    }

    void validate() const;
};

} // namespace bimark
