#include <doctest.h>

#include <cmath>

#include "bimark/detect.hpp"
#include "bimark/harness.hpp"
#include "bimark/io.hpp"
#include "bimark/prng.hpp"

using namespace bimark;

namespace {

WatermarkParams detect_params(double gamma, double delta, int vocab) {
    WatermarkParams p;
    p.gamma = gamma;
    p.delta = delta;
    p.key = WatermarkKey::from_hex("00112233445566778899aabbccddeeff");
    p.vocab_size = vocab;
    p.policy = PseudoRandomPolarity{0.5};
    return p;
}

SequenceRecord random_record(SeedStream& rng, int len, int vocab, bool with_entropy,
                             double entropy_lo = 0.7, double entropy_hi = 1.0) {
    SequenceRecord rec;
    rec.id = "r";
    rec.prompt = std::vector<TokenId>{static_cast<TokenId>(rng.next_below(vocab))};
    rec.tokens.resize(static_cast<size_t>(len));
    for (TokenId& t : rec.tokens) t = static_cast<TokenId>(rng.next_below(vocab));
    if (with_entropy) {
        std::vector<double> se(static_cast<size_t>(len));
        for (double& e : se) e = entropy_lo + (entropy_hi - entropy_lo) * rng.next_unit();
        rec.entropies = se;
    }
    return rec;
}

} // namespace

TEST_CASE("matched-key watermarked traces score far above threshold") {
    SyntheticModelSpec spec;
    spec.vocab_size = 1024;
    spec.rng_seed = 31;
    const auto model = make_synthetic_model(spec);

    CorpusParams cp;
    cp.params = detect_params(0.5, 2.0, 1024);
    cp.sampler = MultinomialSampler{1.0};
    cp.tokens = 200;
    const auto corpus = make_corpus(*model, cp, 100, 808, true);

    int above = 0;
    for (const auto& rec : corpus) {
        const ScoreReport r = score_sequence(rec, cp.params, Scheme::BiMarker);
        if (r.z > 4.0) ++above;
        CHECK(r.is_watermarked == (r.z > r.threshold));
        CHECK(r.p == doctest::Approx(p_value(r.z)));
    }
    CHECK(above >= 95);

    // Scoring is a pure function: identical reruns are bit-identical.
    const ScoreReport a = score_sequence(corpus[0], cp.params, Scheme::BiMarker);
    const ScoreReport b = score_sequence(corpus[0], cp.params, Scheme::BiMarker);
    CHECK(a.z == b.z);
    CHECK(a.p == b.p);

    // A mismatched key sees only noise.
    WatermarkParams wrong = cp.params;
    wrong.key = WatermarkKey::from_hex("ffeeddccbbaa99887766554433221100");
    std::vector<double> zs;
    for (const auto& rec : corpus) zs.push_back(score_sequence(rec, wrong, Scheme::BiMarker).z);
    CHECK(std::fabs(mean_of(zs)) <= 0.4);
}

TEST_CASE("differential and unipolar statistics coincide on every sequence at dyadic gamma") {
    // With the boost always on list1 and green defined as list1 XOR negative,
    // the pole difference re-expresses the plain green count; the two z
    // values agree exactly whenever gamma is exactly representable.
    SeedStream rng(37);
    for (double gamma : {0.25, 0.5, 0.75}) {
        WatermarkParams params = detect_params(gamma, 2.0, 64);
        for (int trial = 0; trial < 50; ++trial) {
            const SequenceRecord rec = random_record(rng, 60, 64, false);
            const double zk = score_sequence(rec, params, Scheme::Kgw).z;
            const double zb = score_sequence(rec, params, Scheme::BiMarker).z;
            CHECK(std::fabs(zb - zk) <= 1e-12);
        }
    }
}

TEST_CASE("scheme reductions collapse end-to-end") {
    SeedStream rng(41);
    WatermarkParams params = detect_params(0.5, 2.0, 64);

    SUBCASE("vacuous threshold: thresholded z equals the plain z") {
        params.tau = 1e-6;
        for (int trial = 0; trial < 100; ++trial) {
            const SequenceRecord rec = random_record(rng, 50, 64, true, 0.7, 1.0);
            CHECK(std::fabs(score_sequence(rec, params, Scheme::Sweet).z -
                            score_sequence(rec, params, Scheme::Kgw).z) <= 1e-12);
            CHECK(std::fabs(score_sequence(rec, params, Scheme::SweetBi).z -
                            score_sequence(rec, params, Scheme::BiMarker).z) <= 1e-12);
        }
    }

    SUBCASE("constant entropy trace: weighted z equals the plain z") {
        for (int trial = 0; trial < 100; ++trial) {
            SequenceRecord rec = random_record(rng, 50, 64, true, 0.9, 0.9);
            CHECK(score_sequence(rec, params, Scheme::Ewd).z ==
                  doctest::Approx(score_sequence(rec, params, Scheme::Kgw).z).epsilon(1e-10));
            CHECK(score_sequence(rec, params, Scheme::EwdBi).z ==
                  doctest::Approx(score_sequence(rec, params, Scheme::BiMarker).z).epsilon(1e-10));
        }
    }
}

TEST_CASE("detection error paths") {
    SeedStream rng(43);
    WatermarkParams params = detect_params(0.5, 2.0, 64);

    SequenceRecord no_entropy = random_record(rng, 20, 64, false);
    CHECK_THROWS_WITH_AS(score_sequence(no_entropy, params, Scheme::Sweet),
                         doctest::Contains("MissingEntropyTrace"), Error);
    CHECK_THROWS_WITH_AS(score_sequence(no_entropy, params, Scheme::Ewd),
                         doctest::Contains("MissingEntropyTrace"), Error);

    SequenceRecord all_low = random_record(rng, 20, 64, true, 0.4, 0.5);
    params.tau = 0.9; // nothing clears it
    CHECK_THROWS_WITH_AS(score_sequence(all_low, params, Scheme::Sweet),
                         doctest::Contains("NoScorableTokens"), Error);
    params.tau = 0.695;

    SequenceRecord token_range = random_record(rng, 5, 64, false);
    token_range.tokens[2] = 64;
    CHECK_THROWS_WITH_AS(score_sequence(token_range, params, Scheme::Kgw),
                         doctest::Contains("InvalidToken"), Error);

    SequenceRecord bare;
    bare.tokens = {3};
    CHECK_THROWS_WITH_AS(score_sequence(bare, params, Scheme::Kgw),
                         doctest::Contains("InsufficientContext"), Error);

    SequenceRecord misshaped = random_record(rng, 10, 64, true);
    misshaped.entropies->pop_back();
    CHECK_THROWS_WITH_AS(score_sequence(misshaped, params, Scheme::Sweet),
                         doctest::Contains("ShapeError"), Error);
}

TEST_CASE("promptless records skip the start and count only scored tokens") {
    SeedStream rng(47);
    WatermarkParams params = detect_params(0.5, 0.0, 64);
    params.context_width = 3;
    SequenceRecord rec = random_record(rng, 20, 64, false);
    rec.prompt.reset();
    const ScoreReport r = score_sequence(rec, params, Scheme::Kgw);
    CHECK(r.scored_tokens == 17);

    rec.prompt = std::vector<TokenId>{1, 2, 3};
    CHECK(score_sequence(rec, params, Scheme::Kgw).scored_tokens == 20);
}

TEST_CASE("corpus evaluation sweeps match hand-checkable shapes") {
    SUBCASE("perfect separation") {
        const std::vector<double> zw{5.0, 6.0, 7.0};
        const std::vector<double> zh{-1.0, 0.0, 1.0};
        const CorpusSummary s = summarize_scores(zw, zh, Scheme::Kgw);
        CHECK(s.tpr_at_fpr0 == doctest::Approx(1.0));
        CHECK(s.best_f1 == doctest::Approx(1.0));
    }

    SUBCASE("identical score distributions give the no-signal f1 curve") {
        std::vector<double> z(100);
        for (size_t i = 0; i < z.size(); ++i) z[i] = static_cast<double>(i) * 0.01;
        const CorpusSummary s = summarize_scores(z, z, Scheme::Kgw);
        CHECK(s.tpr_at_fpr0 == doctest::Approx(0.0));
        for (const RocPoint& pt : s.roc) {
            CHECK(pt.tpr == doctest::Approx(pt.fpr)); // diagonal
            const double expect = pt.tpr > 0.0 ? 2.0 * pt.tpr / (1.0 + 2.0 * pt.tpr) : 0.0;
            CHECK(pt.f1 == doctest::Approx(expect).epsilon(1e-9));
        }
    }

    SUBCASE("roc is monotone in the threshold") {
        SeedStream rng(53);
        std::vector<double> zw(200), zh(200);
        for (double& z : zw) z = 3.0 + 2.0 * rng.next_unit();
        for (double& z : zh) z = 4.0 * rng.next_unit() - 2.0;
        const CorpusSummary s = summarize_scores(zw, zh, Scheme::Kgw);
        for (size_t i = 1; i < s.roc.size(); ++i) {
            CHECK(s.roc[i].threshold > s.roc[i - 1].threshold);
            CHECK(s.roc[i].tpr <= s.roc[i - 1].tpr);
            CHECK(s.roc[i].fpr <= s.roc[i - 1].fpr);
        }
        CHECK(s.tpr_at_fpr1 <= s.tpr_at_fpr5);
    }

    SUBCASE("empty corpora are rejected") {
        const std::vector<SequenceRecord> none;
        const std::vector<SequenceRecord> one(1);
        WatermarkParams params = detect_params(0.5, 2.0, 64);
        CHECK_THROWS_WITH_AS(evaluate_corpus(none, one, params, Scheme::Kgw),
                             doctest::Contains("EmptyCorpus"), Error);
    }
}

TEST_CASE("prefix z scan") {
    SeedStream rng(59);
    WatermarkParams params = detect_params(0.5, 1.5, 64);

    SUBCASE("null series stays in a sane band and starts finite") {
        const SequenceRecord rec = random_record(rng, 200, 64, false);
        const auto series = z_vs_length(rec, params, Scheme::BiMarker);
        REQUIRE(series.size() == 200);
        CHECK(series.front().first == 1);
        CHECK(std::isfinite(series.front().second));
        for (const auto& [t, z] : series) CHECK(std::fabs(z) < 6.0);
    }

    SUBCASE("watermarked series trends upward") {
        SyntheticModelSpec spec;
        spec.vocab_size = 64;
        spec.rng_seed = 61;
        const auto model = make_synthetic_model(spec);
        CorpusParams cp;
        cp.params = params;
        cp.sampler = MultinomialSampler{1.0};
        cp.tokens = 200;
        const auto corpus = make_corpus(*model, cp, 20, 909, true);
        double z50 = 0.0, z200 = 0.0;
        for (const auto& rec : corpus) {
            const auto series = z_vs_length(rec, params, Scheme::BiMarker);
            z50 += series[49].second;
            z200 += series[199].second;
        }
        CHECK(z200 / 20.0 > z50 / 20.0);
    }

    SUBCASE("too-short records are rejected") {
        SequenceRecord rec;
        rec.tokens = {1};
        rec.prompt = std::vector<TokenId>{2};
        CHECK_THROWS_WITH_AS(z_vs_length(rec, params, Scheme::Kgw),
                             doctest::Contains("EmptySequence"), Error);
    }
}

TEST_CASE("token-edit attack") {
    SeedStream rng(67);
    const SequenceRecord rec = random_record(rng, 100, 64, true);

    SUBCASE("zero rate is the identity") {
        const SequenceRecord out = perturb_attack(rec, 0.0, 64, 1);
        CHECK(out.tokens == rec.tokens);
        CHECK(out.label == rec.label);
    }

    SUBCASE("a saturating rate destroys the signal") {
        SyntheticModelSpec spec;
        spec.vocab_size = 64;
        spec.rng_seed = 71;
        const auto model = make_synthetic_model(spec);
        CorpusParams cp;
        cp.params = detect_params(0.5, 4.0, 64);
        cp.sampler = MultinomialSampler{1.0};
        cp.tokens = 200;
        const auto corpus = make_corpus(*model, cp, 30, 303, true);
        double clean = 0.0, wrecked = 0.0;
        for (size_t i = 0; i < corpus.size(); ++i) {
            clean += score_sequence(corpus[i], cp.params, Scheme::BiMarker).z;
            const SequenceRecord hit = perturb_attack(corpus[i], 0.99, 64, 1000 + i);
            wrecked += score_sequence(hit, cp.params, Scheme::BiMarker).z;
        }
        CHECK(clean / 30.0 > 10.0);
        CHECK(std::fabs(wrecked / 30.0) < 1.5);
    }

    SUBCASE("rate validation") {
        CHECK_THROWS_WITH_AS(perturb_attack(rec, 1.0, 64, 1), doctest::Contains("ConfigError"),
                             Error);
    }
}
