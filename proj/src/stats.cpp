#include "bimark/stats.hpp"

#include <cmath>
#include <string>

namespace bimark {

void validate_prob_vector(std::span<const double> probs) {
    if (probs.empty()) raise(Errc::InvalidDistribution, "empty probability vector");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p))
            raise(Errc::InvalidDistribution, "negative or non-finite probability entry");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        raise(Errc::InvalidDistribution, "probabilities sum to " + std::to_string(sum));
}

double spike_entropy(std::span<const double> probs, double modulus) {
    validate_prob_vector(probs);
    if (modulus < 0.0) raise(Errc::InvalidDistribution, "negative spike entropy modulus");
    double s = 0.0;
    for (double p : probs) s += p / (1.0 + modulus * p);
    return s;
}

double bound_modulus(double gamma, double delta) {
    const double alpha = std::exp(delta);
    return (1.0 - gamma) * (alpha - 1.0) / (1.0 + (alpha - 1.0) * gamma);
}

double ewd_weight(double se, double modulus) {
    const double c0 = ewd_c0(modulus);
    if (se < c0 - 1e-9)
        raise(Errc::InvalidEntropy, "spike entropy " + std::to_string(se) +
                                        " below minimum " + std::to_string(c0));
    const double w = se - c0;
    return w < 0.0 ? 0.0 : w;
}

double z_kgw(int64_t green_total, int64_t total, double gamma) {
    if (total < 1) raise(Errc::EmptySequence, "no scored tokens");
    const double t = static_cast<double>(total);
    return (static_cast<double>(green_total) - gamma * t) / std::sqrt(t * gamma * (1.0 - gamma));
}

double z_bimarker(const GreenCounts& c, double gamma) {
    const int64_t total = c.total();
    if (total < 1) raise(Errc::EmptySequence, "no scored tokens");
    const double num = static_cast<double>(c.green_pos) - static_cast<double>(c.green_neg) -
                       gamma * static_cast<double>(c.total_pos) +
                       (1.0 - gamma) * static_cast<double>(c.total_neg);
    return num / std::sqrt(static_cast<double>(total) * gamma * (1.0 - gamma));
}

double z_sweet(const GreenCounts& c, double gamma, bool bipolar) {
    if (c.total() < 1) raise(Errc::NoScorableTokens, "every token fell below the entropy threshold");
    return bipolar ? z_bimarker(c, gamma) : z_kgw(c.green_total(), c.total(), gamma);
}

double z_ewd(const WeightedCounts& w, double gamma, bool bipolar) {
    if (!(w.sum_w_sq > 0.0)) raise(Errc::NoScorableTokens, "all entropy weights are zero");
    const double denom = std::sqrt(gamma * (1.0 - gamma) * w.sum_w_sq);
    if (bipolar)
        return (w.green_pos_w - w.green_neg_w - gamma * w.sum_w_pos +
                (1.0 - gamma) * w.sum_w_neg) /
               denom;
    return (w.green_total_w() - gamma * w.sum_w()) / denom;
}

double p_value(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

ScoreReport make_report(Scheme scheme, double z, std::variant<GreenCounts, WeightedCounts> counts,
                        int64_t scored_tokens, double threshold) {
    ScoreReport r;
    r.scheme = scheme;
    r.z = z;
    r.p = p_value(z);
    r.counts = std::move(counts);
    r.scored_tokens = scored_tokens;
    r.threshold = threshold;
    r.is_watermarked = z > threshold;
    return r;
}

} // namespace bimark
