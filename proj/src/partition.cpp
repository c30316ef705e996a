#include "bimark/partition.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

namespace bimark {

uint64_t key_digest(const WatermarkKey& key) noexcept {
    uint64_t state = kGolden64;
    for (uint8_t b : key.bytes) state = absorb64(state, b);
    return absorb64(state, static_cast<uint64_t>(key.bytes.size()));
}

uint64_t derive_seed(const WatermarkKey& key, std::span<const TokenId> context, int h) {
    if (static_cast<size_t>(h) > context.size())
        raise(Errc::InsufficientContext, "need " + std::to_string(h) + " context tokens, have " +
                                             std::to_string(context.size()));
    uint64_t state = absorb64(key_digest(key), static_cast<uint64_t>(h));
    for (size_t i = context.size() - static_cast<size_t>(h); i < context.size(); ++i)
        state = absorb64(state, static_cast<uint64_t>(static_cast<uint32_t>(context[i])));
    return state;
}

namespace {

void shuffle_into(std::vector<TokenId>& perm, SeedStream& stream, int vocab_size) {
    perm.resize(static_cast<size_t>(vocab_size));
    std::iota(perm.begin(), perm.end(), TokenId{0});
    for (size_t i = perm.size() - 1; i > 0; --i) {
        const size_t j = static_cast<size_t>(stream.next_below(static_cast<uint64_t>(i + 1)));
        std::swap(perm[i], perm[j]);
    }
}

void split_from_perm(VocabSplit& out, const std::vector<TokenId>& perm, int list1_size) {
    out.list1.assign(perm.begin(), perm.begin() + list1_size);
    out.in_list1.assign(perm.size(), 0);
    for (TokenId t : out.list1) out.in_list1[static_cast<size_t>(t)] = 1;
}

} // namespace

VocabSplit partition_vocab(SeedStream& stream, const PartitionParams& params) {
    params.validate();
    PartitionScratch scratch;
    shuffle_into(scratch.perm, stream, params.vocab_size);
    VocabSplit split;
    split_from_perm(split, scratch.perm, params.list1_size());
    return split;
}

VocabSplit partition_vocab(uint64_t seed, const PartitionParams& params) {
    SeedStream stream(seed);
    return partition_vocab(stream, params);
}

Polarity decide_polarity(SeedStream& stream, const PolarityPolicy& policy, size_t position_index) {
    struct Visitor {
        SeedStream& stream;
        size_t pos;
        Polarity operator()(const PseudoRandomPolarity& p) const {
            return stream.next_unit() < p.rho ? Polarity::Positive : Polarity::Negative;
        }
        Polarity operator()(const PositionCyclePolarity& p) const {
            const size_t period = static_cast<size_t>(p.k_pos) + static_cast<size_t>(p.k_neg);
            return (pos % period) < static_cast<size_t>(p.k_pos) ? Polarity::Positive
                                                                 : Polarity::Negative;
        }
        Polarity operator()(const HardSplitPolarity& p) const {
            const auto n_pos =
                static_cast<size_t>(p.rho * static_cast<double>(p.total_tokens) + 0.5);
            return pos < n_pos ? Polarity::Positive : Polarity::Negative;
        }
    };
    return std::visit(Visitor{stream, position_index}, policy);
}

TokenClass classify_token(TokenId token, const PartitionOutcome& outcome) {
    if (token < 0 || static_cast<size_t>(token) >= outcome.split.in_list1.size())
        raise(Errc::InvalidToken, "token id " + std::to_string(token) + " outside vocabulary of " +
                                      std::to_string(outcome.split.in_list1.size()));
    const bool in1 = outcome.split.contains_list1(token);
    const bool green = in1 == outcome.green_is_list1();
    return TokenClass{green, outcome.polarity};
}

PartitionOutcome derive_outcome(const WatermarkKey& key, std::span<const TokenId> context,
                                const PartitionParams& params, const PolarityPolicy& policy,
                                size_t position_index) {
    PartitionOutcome out;
    PartitionScratch scratch;
    derive_outcome_into(out, scratch, key, context, params, policy, position_index);
    return out;
}

void derive_outcome_into(PartitionOutcome& out, PartitionScratch& scratch, const WatermarkKey& key,
                         std::span<const TokenId> context, const PartitionParams& params,
                         const PolarityPolicy& policy, size_t position_index) {
    SeedStream stream(derive_seed(key, context, params.context_width));
    shuffle_into(scratch.perm, stream, params.vocab_size);
    split_from_perm(out.split, scratch.perm, params.list1_size());
    out.polarity = decide_polarity(stream, policy, position_index);
}

} // namespace bimark
