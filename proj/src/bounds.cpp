#include "bimark/bounds.hpp"

#include <cmath>

namespace bimark {

namespace {

double boost_denom(double gamma, double delta) {
    return 1.0 + (std::exp(delta) - 1.0) * gamma; // D
}

} // namespace

double green_prob_lower_bound(std::span<const double> probs, double gamma, double delta) {
    const double alpha = std::exp(delta);
    const double d = boost_denom(gamma, delta);
    return gamma * alpha / d * spike_entropy(probs, bound_modulus(gamma, delta));
}

double expected_green_lower_bound(double total, double gamma, double delta, double s_star) {
    const double alpha = std::exp(delta);
    return gamma * alpha * total / boost_denom(gamma, delta) * s_star;
}

double z_bound_kgw(const BoundInputs& b) {
    const double t = b.total();
    const double expected = expected_green_lower_bound(t, b.gamma, b.delta, b.s_star);
    return (expected - b.gamma * t) / std::sqrt(t * b.gamma * (1.0 - b.gamma));
}

double z_bound_bimarker(const BoundInputs& b) {
    const double t = b.total();
    const double alpha = std::exp(b.delta);
    const double d = boost_denom(b.gamma, b.delta);
    const double num = alpha * b.gamma * b.total_pos / d * b.s_star -
                       (1.0 - b.gamma) * b.total_neg / d - b.gamma * b.total_pos +
                       (1.0 - b.gamma) * b.total_neg;
    return num / std::sqrt(t * b.gamma * (1.0 - b.gamma));
}

double ewd_z_bound(const BoundInputs& b, bool bipolar) {
    if (!(b.sum_w_sq > 0.0)) raise(Errc::NoScorableTokens, "all entropy weights are zero");
    const double alpha = std::exp(b.delta);
    const double d = boost_denom(b.gamma, b.delta);
    const double denom = std::sqrt(b.gamma * (1.0 - b.gamma) * b.sum_w_sq);
    if (!bipolar) {
        const double num =
            b.gamma * alpha * b.total() / d * b.sw_star - b.gamma * b.sum_w;
        return num / denom;
    }
    const double num = b.gamma * alpha * b.total_pos / d * b.sw_star -
                       (1.0 - b.gamma) * b.total_neg / d * b.w_star_neg -
                       b.gamma * b.sum_w_pos + (1.0 - b.gamma) * b.sum_w_neg;
    return num / denom;
}

double perplexity_bound_factor(double gamma, double delta) {
    return boost_denom(gamma, delta);
}

std::vector<Theorem1Row> theorem1_check(std::span<const BoundInputs> grid) {
    std::vector<Theorem1Row> rows;
    rows.reserve(grid.size());
    for (const BoundInputs& b : grid) {
        Theorem1Row row;
        row.inputs = b;
        row.bound_diff = z_bound_bimarker(b);
        row.bound_unipolar = z_bound_kgw(b);
        const double gap = row.bound_diff - row.bound_unipolar;
        row.holds = gap >= -kBoundTolerance;
        row.tie = std::fabs(gap) <= kBoundTolerance;
        rows.push_back(row);
    }
    return rows;
}

std::vector<BoundInputs> default_theorem1_grid() {
    static constexpr double kGammas[] = {0.1, 0.25, 0.5, 0.75, 0.9};
    static constexpr double kDeltas[] = {0.25, 0.5, 1.0, 2.0, 4.0};
    static constexpr double kSStars[] = {0.5, 0.8, 0.95, 1.0};
    static constexpr double kTotal = 200.0;
    std::vector<BoundInputs> grid;
    grid.reserve(std::size(kGammas) * std::size(kDeltas) * std::size(kSStars));
    for (double gamma : kGammas)
        for (double delta : kDeltas)
            for (double s_star : kSStars) {
                BoundInputs b;
                b.gamma = gamma;
                b.delta = delta;
                // T_p/T_n = (1-gamma)/gamma: T_p = (1-gamma)T, T_n = gamma*T.
                b.total_pos = (1.0 - gamma) * kTotal;
                b.total_neg = gamma * kTotal;
                b.s_star = s_star;
                grid.push_back(b);
            }
    return grid;
}

} // namespace bimark
