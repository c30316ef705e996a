#pragma once

// Closed-form detectability quantities: the green-sampling probability lower
// bound, expected green counts, z-score lower bounds for the unipolar and
// differential statistics (plus their entropy-weighted analogues), and the
// perplexity bound factor. With D = 1 + (alpha-1)*gamma and alpha = exp(delta):
//
//   P[token in green | boost]            >= gamma*alpha/D * S(p, m~)
//   E|s|_G  (unipolar, T tokens)         >= gamma*alpha*T/D * S*
//   B(z_k)  = (gamma*alpha*T/D * S* - gamma*T) / sqrt(T*gamma*(1-gamma))
//   B(z_d)  = (alpha*gamma*T_p/D * S* - (1-gamma)*T_n/D
//              - gamma*T_p + (1-gamma)*T_n) / sqrt(T*gamma*(1-gamma))
//
// The differential bound caps the negative pole's green count by its
// maximum-entropy value (1-gamma)*T_n/D; with that cap,
// B(z_d) - B(z_k) = T_n*alpha*gamma*(1-S*)/D / sqrt(T*gamma*(1-gamma)) >= 0
// exactly whenever T_p/T_n = (1-gamma)/gamma and the pole entropies agree.

#include <span>
#include <vector>

#include "bimark/stats.hpp"

namespace bimark {

struct BoundInputs {
    double gamma = 0.5;
    double delta = 2.0;   // alpha = exp(delta)
    double total_pos = 100.0; // T_p
    double total_neg = 100.0; // T_n
    double s_star = 1.0;  // average spike entropy, in (0,1]

    // Weighted-statistic extras (entropy-weighted schemes only).
    double sw_star = 1.0;    // mean entropy*weight product
    double w_star_neg = 1.0; // mean weight over the negative pole
    double sum_w = 0.0;      // sum of weights over all tokens
    double sum_w_sq = 0.0;   // sum of squared weights
    double sum_w_pos = 0.0;  // weight sum, positive pole
    double sum_w_neg = 0.0;  // weight sum, negative pole

    double total() const noexcept { return total_pos + total_neg; }
};

/// gamma*alpha/D * S(p, (1-gamma)*(alpha-1)/D): lower bound on the
/// probability that a token sampled after a delta boost of a random
/// gamma-fraction list lands in that list.
double green_prob_lower_bound(std::span<const double> probs, double gamma, double delta);

/// Sequence-level version: gamma*alpha*T/D * S_star.
double expected_green_lower_bound(double total, double gamma, double delta, double s_star);

double z_bound_kgw(const BoundInputs& b);
double z_bound_bimarker(const BoundInputs& b);

/// Entropy-weighted z lower bound; unit weights reduce to the unweighted
/// bounds. Throws NoScorableTokens when sum_w_sq = 0.
double ewd_z_bound(const BoundInputs& b, bool bipolar);

/// (1 + (alpha-1)*gamma): the multiplier on the unwatermarked perplexity in
/// the expected-perplexity bound. Depends only on gamma and delta; both
/// generation modes boost an identically sized token set, so they share it.
double perplexity_bound_factor(double gamma, double delta);

struct Theorem1Row {
    BoundInputs inputs;
    double bound_diff = 0.0;    // B(z_d)
    double bound_unipolar = 0.0; // B(z_k)
    bool holds = false;          // B(z_d) >= B(z_k) - 1e-12
    bool tie = false;            // |B(z_d) - B(z_k)| <= 1e-12
};

/// Evaluates the differential-vs-unipolar bound dominance over a grid of
/// inputs. Callers are expected to supply grid points with
/// T_p/T_n = (1-gamma)/gamma and matching pole entropies.
std::vector<Theorem1Row> theorem1_check(std::span<const BoundInputs> grid);

/// The audit grid: gamma x delta x s_star crossed with T = 200 split so that
/// T_p/T_n = (1-gamma)/gamma.
std::vector<BoundInputs> default_theorem1_grid();

inline constexpr double kBoundTolerance = 1e-12;

} // namespace bimark
