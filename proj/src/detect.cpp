#include "bimark/detect.hpp"

#include <algorithm>
#include <cmath>

#include "bimark/partition.hpp"
#include "bimark/prng.hpp"

namespace bimark {

const char* label_name(Label l) noexcept {
    switch (l) {
        case Label::Watermarked: return "watermarked";
        case Label::Human: return "human";
        case Label::Unknown: return "unknown";
    }
    return "?";
}

std::optional<Label> label_from_name(std::string_view name) noexcept {
    if (name == "watermarked") return Label::Watermarked;
    if (name == "human") return Label::Human;
    if (name == "unknown") return Label::Unknown;
    return std::nullopt;
}

SequenceClassification classify_sequence(const SequenceRecord& rec, const WatermarkParams& params) {
    const size_t h = static_cast<size_t>(params.context_width);
    const size_t prompt_len = rec.prompt ? rec.prompt->size() : 0;

    // Tokens at the sequence start without h predecessors are skipped; T
    // counts scored tokens only.
    const size_t first = prompt_len >= h ? 0 : h - prompt_len;
    if (first >= rec.tokens.size())
        raise(Errc::InsufficientContext, "record '" + rec.id + "' has no token with " +
                                             std::to_string(h) + " preceding context tokens");

    const size_t n_scored = rec.tokens.size() - first;
    const double* entropy_by_token = nullptr;
    const double* entropy_by_scored = nullptr;
    if (rec.entropies) {
        if (rec.entropies->size() == rec.tokens.size())
            entropy_by_token = rec.entropies->data();
        else if (rec.entropies->size() == n_scored)
            entropy_by_scored = rec.entropies->data();
        else
            raise(Errc::ShapeError, "record '" + rec.id + "' entropy trace has " +
                                        std::to_string(rec.entropies->size()) + " entries for " +
                                        std::to_string(rec.tokens.size()) + " tokens");
    }

    std::vector<TokenId> stream;
    stream.reserve(prompt_len + rec.tokens.size());
    if (rec.prompt) stream.insert(stream.end(), rec.prompt->begin(), rec.prompt->end());
    stream.insert(stream.end(), rec.tokens.begin(), rec.tokens.end());

    SequenceClassification cls;
    cls.first_scored = first;
    cls.positions.reserve(n_scored);

    const PartitionParams pp = params.partition();
    PartitionOutcome outcome;
    PartitionScratch scratch;
    for (size_t j = first; j < rec.tokens.size(); ++j) {
        const size_t scored_index = j - first;
        const std::span<const TokenId> context(stream.data(), prompt_len + j);
        derive_outcome_into(outcome, scratch, params.key, context, pp, params.policy, scored_index);
        const TokenClass tc = classify_token(rec.tokens[j], outcome);

        PositionClass pc;
        pc.in_list1 = outcome.split.contains_list1(rec.tokens[j]) ? 1 : 0;
        pc.polarity = tc.polarity;
        if (entropy_by_token) {
            pc.entropy = entropy_by_token[j];
            pc.has_entropy = 1;
        } else if (entropy_by_scored) {
            pc.entropy = entropy_by_scored[scored_index];
            pc.has_entropy = 1;
        }
        cls.positions.push_back(pc);
    }
    return cls;
}

namespace {

void require_entropy(const SequenceClassification& cls, Scheme scheme) {
    for (const PositionClass& pc : cls.positions)
        if (!pc.has_entropy)
            raise(Errc::MissingEntropyTrace, std::string(scheme_name(scheme)) +
                                                 " scoring needs a per-token entropy trace");
}

} // namespace

ScoreReport score_classified(const SequenceClassification& cls, const WatermarkParams& params,
                             Scheme scheme) {
    if (cls.positions.empty()) raise(Errc::EmptySequence, "no scored tokens");
    const bool bipolar = is_bipolar(scheme);

    if (uses_entropy(scheme)) require_entropy(cls, scheme);

    if (is_weighted(scheme)) {
        const double modulus = bound_modulus(params.gamma, params.delta);
        WeightedCounts w;
        for (const PositionClass& pc : cls.positions) {
            const double weight = ewd_weight(pc.entropy, modulus);
            const bool green = bipolar ? pc.green_bipolar() : pc.in_list1 != 0;
            if (pc.polarity == Polarity::Positive) {
                w.sum_w_pos += weight;
                if (green) w.green_pos_w += weight;
            } else {
                w.sum_w_neg += weight;
                if (green) w.green_neg_w += weight;
            }
            w.sum_w_sq += weight * weight;
        }
        const double z = z_ewd(w, params.gamma, bipolar);
        return make_report(scheme, z, w, static_cast<int64_t>(cls.positions.size()),
                           params.threshold);
    }

    const bool thresholded = is_thresholded(scheme);
    GreenCounts c;
    for (const PositionClass& pc : cls.positions) {
        if (thresholded && !(pc.entropy > params.tau)) continue;
        const bool green = bipolar ? pc.green_bipolar() : pc.in_list1 != 0;
        if (pc.polarity == Polarity::Positive) {
            c.total_pos += 1;
            if (green) c.green_pos += 1;
        } else {
            c.total_neg += 1;
            if (green) c.green_neg += 1;
        }
    }

    double z = 0.0;
    if (thresholded)
        z = z_sweet(c, params.gamma, bipolar);
    else
        z = bipolar ? z_bimarker(c, params.gamma) : z_kgw(c.green_total(), c.total(), params.gamma);
    return make_report(scheme, z, c, c.total(), params.threshold);
}

ScoreReport score_sequence(const SequenceRecord& rec, const WatermarkParams& params, Scheme scheme) {
    return score_classified(classify_sequence(rec, params), params, scheme);
}

namespace {

double f1_score(double tp, double fp, double fn) {
    const double denom = 2.0 * tp + fp + fn;
    return denom > 0.0 ? 2.0 * tp / denom : 0.0;
}

void mean_var(const std::vector<double>& xs, double& mean, double& var) {
    mean = 0.0;
    var = 0.0;
    if (xs.empty()) return;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);
}

} // namespace

CorpusSummary evaluate_corpus(const std::vector<SequenceRecord>& watermarked,
                              const std::vector<SequenceRecord>& human,
                              const WatermarkParams& params, Scheme scheme) {
    if (watermarked.empty() || human.empty())
        raise(Errc::EmptyCorpus, "evaluation needs nonempty watermarked and human corpora");

    size_t degenerate = 0;
    std::vector<double> zw, zh;
    auto score_all = [&](const std::vector<SequenceRecord>& recs, std::vector<double>& out) {
        out.reserve(recs.size());
        for (const SequenceRecord& rec : recs) {
            try {
                out.push_back(score_sequence(rec, params, scheme).z);
            } catch (const Error& e) {
                if (e.code() == Errc::NoScorableTokens || e.code() == Errc::MissingEntropyTrace ||
                    e.code() == Errc::InsufficientContext || e.code() == Errc::EmptySequence)
                    degenerate += 1;
                else
                    throw;
            }
        }
    };
    score_all(watermarked, zw);
    score_all(human, zh);
    if (zw.empty() || zh.empty())
        raise(Errc::EmptyCorpus, "no scorable records in one of the corpora");

    CorpusSummary s = summarize_scores(zw, zh, scheme);
    s.n_watermarked = watermarked.size();
    s.n_human = human.size();
    s.degenerate = degenerate;
    return s;
}

CorpusSummary summarize_scores(std::span<const double> z_watermarked,
                               std::span<const double> z_human, Scheme scheme) {
    if (z_watermarked.empty() || z_human.empty())
        raise(Errc::EmptyCorpus, "score summary needs both classes");

    CorpusSummary s;
    s.scheme = scheme;
    std::vector<double> zw(z_watermarked.begin(), z_watermarked.end());
    std::vector<double> zh(z_human.begin(), z_human.end());
    s.n_watermarked = zw.size();
    s.n_human = zh.size();
    s.scored_watermarked = zw.size();
    s.scored_human = zh.size();
    mean_var(zw, s.mean_z_watermarked, s.var_z_watermarked);
    mean_var(zh, s.mean_z_human, s.var_z_human);

    // Threshold sweep over the observed z values (rule: z > threshold).
    std::vector<double> thresholds;
    thresholds.reserve(zw.size() + zh.size() + 1);
    thresholds.insert(thresholds.end(), zw.begin(), zw.end());
    thresholds.insert(thresholds.end(), zh.begin(), zh.end());
    const double lo = *std::min_element(thresholds.begin(), thresholds.end());
    thresholds.push_back(lo - 1.0); // everything flagged
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    std::vector<double> zw_sorted = zw, zh_sorted = zh;
    std::sort(zw_sorted.begin(), zw_sorted.end());
    std::sort(zh_sorted.begin(), zh_sorted.end());
    const auto count_above = [](const std::vector<double>& sorted, double t) {
        return static_cast<double>(sorted.end() -
                                   std::upper_bound(sorted.begin(), sorted.end(), t));
    };

    s.roc.reserve(thresholds.size());
    for (double t : thresholds) {
        const double tp = count_above(zw_sorted, t);
        const double fp = count_above(zh_sorted, t);
        RocPoint pt;
        pt.threshold = t;
        pt.tpr = tp / static_cast<double>(zw.size());
        pt.fpr = fp / static_cast<double>(zh.size());
        pt.f1 = f1_score(tp, fp, static_cast<double>(zw.size()) - tp);
        s.roc.push_back(pt);
        s.best_f1 = std::max(s.best_f1, pt.f1);
    }

    // Smallest threshold whose empirical FPR stays within the target; the
    // FPR=0 case lands on the maximum human z (strictly above it).
    const auto tpr_at = [&](double target, double& f1_out) {
        double best_tpr = 0.0;
        double best_f1 = 0.0;
        for (const RocPoint& pt : s.roc)
            if (pt.fpr <= target && pt.tpr >= best_tpr) {
                best_tpr = pt.tpr;
                best_f1 = pt.f1;
            }
        f1_out = best_f1;
        return best_tpr;
    };
    double f1_dummy = 0.0;
    s.tpr_at_fpr0 = tpr_at(0.0, f1_dummy);
    s.tpr_at_fpr1 = tpr_at(0.01, s.f1_at_fpr1);
    s.tpr_at_fpr5 = tpr_at(0.05, s.f1_at_fpr5);
    return s;
}

std::vector<std::pair<int64_t, double>> z_vs_length(const SequenceRecord& rec,
                                                    const WatermarkParams& params, Scheme scheme) {
    if (rec.tokens.size() < 2)
        raise(Errc::EmptySequence, "prefix scan needs at least two tokens");
    const SequenceClassification cls = classify_sequence(rec, params);
    if (uses_entropy(scheme)) require_entropy(cls, scheme);

    std::vector<std::pair<int64_t, double>> series;
    series.reserve(cls.positions.size());
    const bool bipolar = is_bipolar(scheme);
    const bool thresholded = is_thresholded(scheme);
    const double modulus = bound_modulus(params.gamma, params.delta);

    GreenCounts c;
    WeightedCounts w;
    int64_t prefix = 0;
    for (const PositionClass& pc : cls.positions) {
        prefix += 1;
        const bool green = bipolar ? pc.green_bipolar() : pc.in_list1 != 0;
        if (is_weighted(scheme)) {
            const double weight = ewd_weight(pc.entropy, modulus);
            if (pc.polarity == Polarity::Positive) {
                w.sum_w_pos += weight;
                if (green) w.green_pos_w += weight;
            } else {
                w.sum_w_neg += weight;
                if (green) w.green_neg_w += weight;
            }
            w.sum_w_sq += weight * weight;
            if (w.sum_w_sq > 0.0)
                series.emplace_back(prefix, z_ewd(w, params.gamma, bipolar));
            continue;
        }
        if (thresholded && !(pc.entropy > params.tau)) {
            if (c.total() > 0) series.emplace_back(prefix, z_sweet(c, params.gamma, bipolar));
            continue;
        }
        if (pc.polarity == Polarity::Positive) {
            c.total_pos += 1;
            if (green) c.green_pos += 1;
        } else {
            c.total_neg += 1;
            if (green) c.green_neg += 1;
        }
        series.emplace_back(prefix, bipolar ? z_bimarker(c, params.gamma)
                                            : z_kgw(c.green_total(), c.total(), params.gamma));
    }
    return series;
}

SequenceRecord perturb_attack(const SequenceRecord& rec, double edit_rate, int vocab_size,
                              uint64_t rng_seed) {
    if (!(edit_rate >= 0.0 && edit_rate < 1.0))
        raise(Errc::ConfigError, "edit_rate must lie in [0,1)");
    if (vocab_size < 2) raise(Errc::ConfigError, "vocab_size must be at least 2");
    SequenceRecord out = rec;
    SeedStream rng(rng_seed);
    for (TokenId& t : out.tokens)
        if (rng.next_unit() < edit_rate)
            t = static_cast<TokenId>(rng.next_below(static_cast<uint64_t>(vocab_size)));
    return out;
}

} // namespace bimark
