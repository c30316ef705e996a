#pragma once

// Keyed pseudorandom vocabulary partition. Both sides of the protocol derive,
// per position, a 64-bit seed from (key, last h tokens), shuffle the
// vocabulary with that seed, take the first round(gamma*|V|) ids as list1,
// and (for bipolar schemes) draw the position's polarity. All steps are pure
// functions of their inputs and bit-exact across generator and detector.

#include <cstdint>
#include <span>
#include <vector>

#include "bimark/params.hpp"
#include "bimark/prng.hpp"

namespace bimark {

/// Digest of the raw key bytes: absorb each byte, then the byte count.
uint64_t key_digest(const WatermarkKey& key) noexcept;

/// Position seed: absorb the context width h, then the last h token ids of
/// `context` (oldest first) into the key digest.
/// Throws InsufficientContext when `context` holds fewer than h tokens.
uint64_t derive_seed(const WatermarkKey& key, std::span<const TokenId> context, int h);

/// The shuffled split of the vocabulary at one position.
struct VocabSplit {
    std::vector<TokenId> list1;    // the round(gamma*|V|) boosted ids, in shuffle order
    std::vector<uint8_t> in_list1; // membership flags over the whole vocabulary

    bool contains_list1(TokenId t) const noexcept {
        return in_list1[static_cast<size_t>(t)] != 0;
    }
};

/// Fisher-Yates shuffle of [0, |V|) driven by `stream`; list1 = first
/// round(gamma*|V|) elements of the permutation. Consumes |V|-1 draws.
VocabSplit partition_vocab(SeedStream& stream, const PartitionParams& params);
VocabSplit partition_vocab(uint64_t seed, const PartitionParams& params);

/// Polarity for a scored position. For PseudoRandomPolarity, `stream` must be
/// the position's stream immediately after partition_vocab (one uniform draw
/// is consumed: positive iff u < rho). Position-based policies leave the
/// stream untouched.
Polarity decide_polarity(SeedStream& stream, const PolarityPolicy& policy, size_t position_index);

struct PartitionOutcome {
    VocabSplit split;
    Polarity polarity = Polarity::Positive;

    /// list1 plays the green role exactly at positive positions.
    bool green_is_list1() const noexcept { return polarity == Polarity::Positive; }
};

struct TokenClass {
    bool is_green = false;
    Polarity polarity = Polarity::Positive;
};

/// green = list1 at positive positions, list2 at negative positions.
/// Throws InvalidToken when the id is outside [0, |V|).
TokenClass classify_token(TokenId token, const PartitionOutcome& outcome);

/// Full per-position pipeline: derive_seed -> shuffle -> polarity.
PartitionOutcome derive_outcome(const WatermarkKey& key, std::span<const TokenId> context,
                                const PartitionParams& params, const PolarityPolicy& policy,
                                size_t position_index);

/// Reusable buffers for the per-position pipeline in hot loops.
struct PartitionScratch {
    std::vector<TokenId> perm;
};

/// As derive_outcome, but reuses `out`'s and `scratch`'s buffers.
void derive_outcome_into(PartitionOutcome& out, PartitionScratch& scratch, const WatermarkKey& key,
                         std::span<const TokenId> context, const PartitionParams& params,
                         const PolarityPolicy& policy, size_t position_index);

} // namespace bimark
