#pragma once

// Spike entropy, entropy weights, the z-statistics for all six detection
// schemes, and Gaussian tail p-values.
//
// Statistic reference (gamma = list1 fraction, T = scored tokens, D below):
//   unipolar:      z = (|s|_G - gamma*T) / sqrt(T*gamma*(1-gamma))
//   differential:  z = (|s|_pG - |s|_nG - gamma*T_p + (1-gamma)*T_n)
//                      / sqrt(T*gamma*(1-gamma))
//   weighted:      same numerators with per-token weights W_i and the
//                  denominator sqrt(gamma*(1-gamma) * sum W_i^2)
// Thresholded (sweet) variants evaluate the same forms over the subset of
// tokens whose entropy exceeds tau.

#include <cstdint>
#include <span>
#include <variant>

#include "bimark/params.hpp"

namespace bimark {

/// Checks entries are nonnegative and sum to 1 within 1e-9.
/// Throws InvalidDistribution otherwise.
void validate_prob_vector(std::span<const double> probs);

/// Spike entropy S(p, m) = sum_k p_k / (1 + m*p_k). Lies in [1/(1+m), 1),
/// hitting the lower end only for a degenerate p; m = 0 gives exactly 1.
double spike_entropy(std::span<const double> probs, double modulus);

/// The entropy modulus (1-gamma)*(alpha-1) / (1+(alpha-1)*gamma) with
/// alpha = exp(delta); the modulus under which all detectability bounds are
/// stated, and the detector's default for entropy weights.
double bound_modulus(double gamma, double delta);

/// Minimal spike entropy at modulus m: C0 = 1/(1+m).
inline double ewd_c0(double modulus) { return 1.0 / (1.0 + modulus); }

/// Linear entropy weight W = se - C0, clamped at zero for roundoff.
/// Throws InvalidEntropy when se < C0 - 1e-9.
double ewd_weight(double se, double modulus);

struct GreenCounts {
    int64_t green_pos = 0; // |s|_pG
    int64_t green_neg = 0; // |s|_nG
    int64_t total_pos = 0; // T_p
    int64_t total_neg = 0; // T_n

    int64_t green_total() const noexcept { return green_pos + green_neg; }
    int64_t total() const noexcept { return total_pos + total_neg; }
};

struct WeightedCounts {
    double green_pos_w = 0.0; // weighted green sum, positive pole
    double green_neg_w = 0.0; // weighted green sum, negative pole
    double sum_w_pos = 0.0;   // sum of weights over the positive pole
    double sum_w_neg = 0.0;   // sum of weights over the negative pole
    double sum_w_sq = 0.0;    // sum of squared weights over all scored tokens

    double green_total_w() const noexcept { return green_pos_w + green_neg_w; }
    double sum_w() const noexcept { return sum_w_pos + sum_w_neg; }
};

/// Unipolar z. Throws EmptySequence when total = 0.
double z_kgw(int64_t green_total, int64_t total, double gamma);

/// Differential z. Throws EmptySequence when T_p + T_n = 0.
double z_bimarker(const GreenCounts& c, double gamma);

/// Thresholded z over counts restricted to entropy > tau positions.
/// Throws NoScorableTokens when no position clears the threshold.
double z_sweet(const GreenCounts& high_entropy_counts, double gamma, bool bipolar);

/// Weighted z. Throws NoScorableTokens when all weights vanish.
double z_ewd(const WeightedCounts& w, double gamma, bool bipolar);

/// One-sided Gaussian tail 1 - Phi(z), via the C library erfc (itself an
/// erf-family approximation accurate well beyond 1e-7).
double p_value(double z);

/// Scored-sequence verdict for one scheme.
struct ScoreReport {
    Scheme scheme = Scheme::Kgw;
    double z = 0.0;
    double p = 1.0;
    std::variant<GreenCounts, WeightedCounts> counts;
    int64_t scored_tokens = 0;
    double threshold = 4.0;
    bool is_watermarked = false;
};

ScoreReport make_report(Scheme scheme, double z, std::variant<GreenCounts, WeightedCounts> counts,
                        int64_t scored_tokens, double threshold);

} // namespace bimark
