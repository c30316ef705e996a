#include "bimark/params.hpp"

#include <cctype>
#include <cmath>

namespace bimark {

namespace {

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

WatermarkKey WatermarkKey::from_hex(std::string_view hex) {
    if (hex.empty()) raise(Errc::ConfigError, "key_hex: empty key");
    if (hex.size() % 2 != 0) raise(Errc::ConfigError, "key_hex: odd number of hex digits");
    WatermarkKey key;
    key.bytes.reserve(hex.size() / 2);
    for (size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_nibble(hex[i]);
        int lo = hex_nibble(hex[i + 1]);
        if (hi < 0 || lo < 0)
            raise(Errc::ConfigError, "key_hex: invalid hex digit at offset " + std::to_string(i));
        key.bytes.push_back(static_cast<uint8_t>((hi << 4) | lo));
    }
    return key;
}

std::string WatermarkKey::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

std::string policy_name(const PolarityPolicy& policy) {
    struct Visitor {
        std::string operator()(const PseudoRandomPolarity& p) const {
            return "pseudo_random(rho=" + std::to_string(p.rho) + ")";
        }
        std::string operator()(const PositionCyclePolarity& p) const {
            return "position_cycle(" + std::to_string(p.k_pos) + "," + std::to_string(p.k_neg) + ")";
        }
        std::string operator()(const HardSplitPolarity& p) const {
            return "hard_split(rho=" + std::to_string(p.rho) +
                   ",T=" + std::to_string(p.total_tokens) + ")";
        }
    };
    return std::visit(Visitor{}, policy);
}

void validate_policy(const PolarityPolicy& policy) {
    struct Visitor {
        void operator()(const PseudoRandomPolarity& p) const {
            if (!(p.rho > 0.0 && p.rho < 1.0))
                raise(Errc::ConfigError, "policy.rho: must lie in (0,1)");
        }
        void operator()(const PositionCyclePolarity& p) const {
            if (p.k_pos < 1 || p.k_neg < 1)
                raise(Errc::ConfigError, "policy cycle lengths must be positive");
        }
        void operator()(const HardSplitPolarity& p) const {
            if (!(p.rho > 0.0 && p.rho < 1.0))
                raise(Errc::ConfigError, "policy.rho: must lie in (0,1)");
            if (p.total_tokens < 1)
                raise(Errc::ConfigError, "policy.total_tokens: must be positive");
        }
    };
    std::visit(Visitor{}, policy);
}

void PartitionParams::validate() const {
    if (vocab_size < 2) raise(Errc::ConfigError, "vocab_size: must be at least 2");
    if (!(gamma > 0.0 && gamma < 1.0)) raise(Errc::ConfigError, "gamma: must lie in (0,1)");
    if (context_width < 1) raise(Errc::ConfigError, "context_width: must be positive");
    const int k = list1_size();
    if (k < 1 || k > vocab_size - 1)
        raise(Errc::ConfigError,
              "gamma: round(gamma*|V|) must leave both lists nonempty (got " + std::to_string(k) +
                  " of " + std::to_string(vocab_size) + ")");
}

const char* scheme_name(Scheme s) noexcept {
    switch (s) {
        case Scheme::Kgw: return "kgw";
        case Scheme::BiMarker: return "bimarker";
        case Scheme::Sweet: return "sweet";
        case Scheme::SweetBi: return "sweet-bi";
        case Scheme::Ewd: return "ewd";
        case Scheme::EwdBi: return "ewd-bi";
    }
    return "?";
}

std::optional<Scheme> scheme_from_name(std::string_view name) noexcept {
    for (Scheme s : kAllSchemes)
        if (name == scheme_name(s)) return s;
    return std::nullopt;
}

void WatermarkParams::validate() const {
    partition().validate();
    if (delta < 0.0) raise(Errc::ConfigError, "delta: must be nonnegative");
    if (key.bytes.empty()) raise(Errc::ConfigError, "key: empty key material");
    validate_policy(policy);
    if (!(tau > 0.0 && tau < 1.0)) raise(Errc::ConfigError, "tau: must lie in (0,1)");
    if (!std::isfinite(threshold)) raise(Errc::ConfigError, "threshold: must be finite");
}

} // namespace bimark
