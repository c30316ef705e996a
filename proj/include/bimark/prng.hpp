#pragma once

// Deterministic 64-bit mixing primitives and the seeded draw stream shared by
// the generator and the detector. These definitions are normative: independent
// implementations must reproduce them bit-exactly to interoperate (see the
// "Deterministic core" section of the README for the byte-level contract).

#include <cstdint>

namespace bimark {

inline constexpr uint64_t kGolden64 = 0x9e3779b97f4a7c15ULL;
inline constexpr uint64_t kAbsorbMul = 0xff51afd7ed558ccdULL;

/// splitmix64 finalizer (Steele, Lea, Flood 2014). Bijective on 64-bit words.
constexpr uint64_t mix64(uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Absorb one 64-bit word into a running digest. For fixed `state` this is a
/// bijection in `value`, so distinct values can never collide under one state.
constexpr uint64_t absorb64(uint64_t state, uint64_t value) noexcept {
    return mix64((state ^ value) * kAbsorbMul + kGolden64);
}

/// splitmix64 stream. One instance is seeded per scored position; the draw
/// order (shuffle first, then at most one polarity uniform) is fixed so that
/// generation and detection consume identical draws.
class SeedStream {
public:
    explicit constexpr SeedStream(uint64_t seed) noexcept : state_(seed) {}

    constexpr uint64_t next_u64() noexcept {
        uint64_t z = (state_ += kGolden64);
        return mix64(z);
    }

    /// Uniform draw in [0, bound) via modulo reduction. The modulo bias is
    /// below 2^-53 for any vocabulary-scale bound and is part of the contract.
    constexpr uint64_t next_below(uint64_t bound) noexcept { return next_u64() % bound; }

    /// Uniform double in [0, 1) with 53 mantissa bits.
    constexpr double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    uint64_t state_;
};

} // namespace bimark
