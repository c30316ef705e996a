#include <doctest.h>

#include <cmath>
#include <vector>

#include "bimark/bounds.hpp"
#include "bimark/partition.hpp"
#include "bimark/prng.hpp"

using namespace bimark;

namespace {

std::vector<double> random_distribution(SeedStream& rng, size_t n, double sharpness) {
    std::vector<double> p(n);
    double sum = 0.0;
    for (double& x : p) {
        const double u = rng.next_unit();
        x = std::exp(sharpness * (u - 0.5));
        sum += x;
    }
    for (double& x : p) x /= sum;
    return p;
}

} // namespace

TEST_CASE("green probability bound collapses to gamma at zero bias") {
    SeedStream rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random_distribution(rng, 30, 4.0 * rng.next_unit());
        const double gamma = 0.1 + 0.8 * rng.next_unit();
        CHECK(green_prob_lower_bound(p, gamma, 0.0) == doctest::Approx(gamma).epsilon(1e-12));
    }
}

TEST_CASE("green probability bound closed form on a degenerate distribution") {
    // gamma=0.5, delta=ln 3: alpha=3, D=2, modulus=0.5, S(degenerate)=2/3,
    // so the bound is (0.5*3/2)*(2/3) = 0.5 -- consistent with the truth,
    // which is about gamma for a one-spike distribution.
    const std::vector<double> degenerate{1.0, 0.0, 0.0, 0.0};
    const double bound = green_prob_lower_bound(degenerate, 0.5, std::log(3.0));
    CHECK(bound == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("green probability bound holds under simulated partitions") {
    // Monte Carlo over the partition draw; the per-draw green probability is
    // the boosted green mass alpha*m1 / (alpha*m1 + 1 - m1).
    SeedStream rng(43);
    const int kVocab = 50;
    const int kDraws = 500;
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = random_distribution(rng, kVocab, 0.5 + 3.0 * rng.next_unit());
        const double gamma = 0.5, delta = 1.0;
        const double alpha = std::exp(delta);
        PartitionParams params{gamma, kVocab, 1};
        double acc = 0.0, acc2 = 0.0;
        for (int d = 0; d < kDraws; ++d) {
            const VocabSplit split = partition_vocab(rng.next_u64(), params);
            double m1 = 0.0;
            for (TokenId t : split.list1) m1 += p[static_cast<size_t>(t)];
            const double green_mass = alpha * m1 / (alpha * m1 + 1.0 - m1);
            acc += green_mass;
            acc2 += green_mass * green_mass;
        }
        const double mean = acc / kDraws;
        const double var = std::max(0.0, acc2 / kDraws - mean * mean);
        const double sigma_hat = std::sqrt(var / kDraws);
        CHECK(mean >= green_prob_lower_bound(p, gamma, delta) - 3.0 * sigma_hat);
    }
}

TEST_CASE("expected green count bound") {
    CHECK(expected_green_lower_bound(200, 0.5, 0.0, 0.795) ==
          doctest::Approx(0.5 * 200 * 0.795).epsilon(1e-12));
    const double factor = 0.5 * std::exp(1.0) / (1.0 + 0.5 * (std::exp(1.0) - 1.0));
    CHECK(factor == doctest::Approx(0.7311).epsilon(1e-4));
    CHECK(expected_green_lower_bound(1, 0.5, 1.0, 1.0) == doctest::Approx(factor).epsilon(1e-12));
    CHECK(expected_green_lower_bound(200, 0.5, std::log(3.0), 1.0) ==
          doctest::Approx(150.0).epsilon(1e-12));
}

TEST_CASE("worked-example token count solves to the stated protocol length") {
    // A published worked example quotes an expected-green lower bound of 79.85
    // for unwatermarked text with average spike entropy 0.799 but leaves T
    // unstated. Solving 79.85 = gamma*T*s_star at delta=0 gives T ~ 199.87,
    // i.e. the usual 200-token protocol; the delta=1 reading would give
    // T ~ 137 (outside any stated protocol), so the delta=0 reading is frozen.
    const double t_solved = 79.85 / (0.5 * 0.799);
    CHECK(t_solved == doctest::Approx(199.875).epsilon(1e-4));
    CHECK(t_solved >= 195.0);
    CHECK(t_solved <= 205.0);
    CHECK(expected_green_lower_bound(t_solved, 0.5, 0.0, 0.799) ==
          doctest::Approx(79.85).epsilon(1e-9));
}

TEST_CASE("unipolar z bound closed forms") {
    BoundInputs b;
    b.gamma = 0.5;
    b.delta = std::log(3.0);
    b.total_pos = 100;
    b.total_neg = 100;
    b.s_star = 1.0;
    CHECK(z_bound_kgw(b) == doctest::Approx(50.0 / std::sqrt(50.0)).epsilon(1e-12));

    b.delta = 0.0;
    for (double s : {0.5, 0.8, 1.0}) {
        b.s_star = s;
        CHECK(z_bound_kgw(b) <= 1e-12);
    }

    b.gamma = 0.25;
    b.delta = 2.0;
    b.total_pos = 150;
    b.total_neg = 50;
    b.s_star = 0.9;
    const double alpha = std::exp(2.0);
    const double d = 1.0 + (alpha - 1.0) * 0.25;
    const double expect = (0.25 * alpha * 200.0 / d * 0.9 - 0.25 * 200.0) /
                          std::sqrt(200.0 * 0.25 * 0.75);
    CHECK(z_bound_kgw(b) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("differential z bound closed forms") {
    BoundInputs b;
    b.gamma = 0.5;
    b.delta = std::log(3.0);
    b.total_pos = 100;
    b.total_neg = 100;

    b.s_star = 1.0;
    CHECK(z_bound_bimarker(b) == doctest::Approx(50.0 / std::sqrt(50.0)).epsilon(1e-12));
    CHECK(z_bound_bimarker(b) == doctest::Approx(z_bound_kgw(b)).epsilon(1e-12));

    b.s_star = 0.8;
    CHECK(z_bound_bimarker(b) > z_bound_kgw(b));

    b.delta = 0.0;
    b.s_star = 1.0;
    CHECK(z_bound_bimarker(b) == doctest::Approx(0.0).epsilon(1e-12));

    // zero bias and balanced poles vanish for any gamma
    b.gamma = 0.25;
    b.total_pos = 150;
    b.total_neg = 50;
    CHECK(z_bound_bimarker(b) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("dominance audit over the default grid") {
    const auto grid = default_theorem1_grid();
    CHECK(grid.size() == 100);
    const auto rows = theorem1_check(grid);
    size_t violations = 0;
    bool tie_at_target = false;
    for (const Theorem1Row& row : rows) {
        if (!row.holds) ++violations;
        if (row.tie && row.inputs.gamma == 0.5 && row.inputs.s_star == 1.0) tie_at_target = true;
        // ties happen exactly on the max-entropy edge
        CHECK(row.tie == (row.inputs.s_star == 1.0));
    }
    CHECK(violations == 0);
    CHECK(tie_at_target);
}

TEST_CASE("bounds are nondecreasing in delta") {
    for (double gamma : {0.1, 0.25, 0.5, 0.75, 0.9})
        for (double s : {0.5, 0.8, 0.95, 1.0}) {
            double prev_k = -1e30, prev_d = -1e30;
            for (double delta : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0}) {
                BoundInputs b;
                b.gamma = gamma;
                b.delta = delta;
                b.total_pos = (1.0 - gamma) * 200.0;
                b.total_neg = gamma * 200.0;
                b.s_star = s;
                CHECK(z_bound_kgw(b) >= prev_k - 1e-9);
                CHECK(z_bound_bimarker(b) >= prev_d - 1e-9);
                prev_k = z_bound_kgw(b);
                prev_d = z_bound_bimarker(b);
            }
        }
}

TEST_CASE("weighted z bounds") {
    // Unit weights reduce to the unweighted bounds.
    BoundInputs b;
    b.gamma = 0.5;
    b.delta = 1.0;
    b.total_pos = 100;
    b.total_neg = 100;
    b.s_star = 0.9;
    b.sw_star = 0.9;
    b.w_star_neg = 1.0;
    b.sum_w = 200;
    b.sum_w_sq = 200;
    b.sum_w_pos = 100;
    b.sum_w_neg = 100;
    CHECK(ewd_z_bound(b, false) == doctest::Approx(z_bound_kgw(b)).epsilon(1e-12));
    CHECK(ewd_z_bound(b, true) == doctest::Approx(z_bound_bimarker(b)).epsilon(1e-12));

    // Equal pole weight sums with matching entropy-weight products: the
    // differential bound dominates.
    b.sw_star = 0.7;
    b.w_star_neg = 0.9;
    b.sum_w = 180;
    b.sum_w_pos = 90;
    b.sum_w_neg = 90;
    b.sum_w_sq = 170;
    CHECK(ewd_z_bound(b, true) >= ewd_z_bound(b, false) - 1e-12);

    // Zero bias with sw_star equal to the mean weight stays nonpositive.
    b.delta = 0.0;
    b.sw_star = 0.9;
    b.sum_w = 180;
    CHECK(ewd_z_bound(b, false) <= 1e-12);

    BoundInputs degenerate = b;
    degenerate.sum_w_sq = 0.0;
    CHECK_THROWS_WITH_AS(ewd_z_bound(degenerate, false), doctest::Contains("NoScorableTokens"),
                         Error);
}

TEST_CASE("perplexity bound factor") {
    CHECK(perplexity_bound_factor(0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(perplexity_bound_factor(0.5, std::log(3.0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(perplexity_bound_factor(0.25, 2.0) ==
          doctest::Approx(1.0 + 0.25 * (std::exp(2.0) - 1.0)).epsilon(1e-12));
    CHECK(perplexity_bound_factor(0.25, 2.0) == doctest::Approx(2.5973).epsilon(1e-4));
}
