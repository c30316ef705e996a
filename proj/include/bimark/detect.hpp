#pragma once

// Scoring of arbitrary token sequences under any scheme: reconstruct each
// position's partition and polarity from the key, classify tokens, accumulate
// plain/thresholded/weighted counts, and aggregate corpus-level TPR/FPR/F1.

#include <optional>
#include <string>
#include <vector>

#include "bimark/params.hpp"
#include "bimark/stats.hpp"

namespace bimark {

enum class Label : uint8_t { Watermarked, Human, Unknown };

const char* label_name(Label l) noexcept;
std::optional<Label> label_from_name(std::string_view name) noexcept;

/// The unit of detection. Labels inform evaluation only, never scoring.
struct SequenceRecord {
    std::string id;
    std::vector<TokenId> tokens;
    std::optional<std::vector<double>> entropies; // one entry per token (or per scored token)
    std::optional<std::vector<TokenId>> prompt;   // context preceding the scored tokens
    Label label = Label::Unknown;
};

/// Per-position reconstruction shared by every scheme's statistic.
struct PositionClass {
    uint8_t in_list1 = 0;
    Polarity polarity = Polarity::Positive;
    double entropy = 0.0;
    uint8_t has_entropy = 0;

    /// Green under the bipolar role assignment.
    bool green_bipolar() const noexcept {
        return (in_list1 != 0) == (polarity == Polarity::Positive);
    }
};

struct SequenceClassification {
    size_t first_scored = 0; // index into tokens of the first scored position
    std::vector<PositionClass> positions;
};

/// Reconstructs partitions and polarities over the scorable suffix of the
/// record (tokens with at least h preceding tokens across prompt + sequence).
/// Throws InsufficientContext when nothing is scorable, InvalidToken on an
/// out-of-range id, ShapeError on an entropy trace of unusable length.
SequenceClassification classify_sequence(const SequenceRecord& rec, const WatermarkParams& params);

/// Scores one record under `scheme` (ignoring params.scheme).
ScoreReport score_sequence(const SequenceRecord& rec, const WatermarkParams& params, Scheme scheme);

/// As above but reusing a classification, so several schemes can share one
/// partition-reconstruction pass.
ScoreReport score_classified(const SequenceClassification& cls, const WatermarkParams& params,
                             Scheme scheme);

struct RocPoint {
    double threshold = 0.0;
    double tpr = 0.0;
    double fpr = 0.0;
    double f1 = 0.0;
};

struct CorpusSummary {
    Scheme scheme = Scheme::Kgw;
    size_t n_watermarked = 0;
    size_t n_human = 0;
    size_t scored_watermarked = 0; // records that produced a z
    size_t scored_human = 0;
    size_t degenerate = 0;         // records rejected as unscorable
    double mean_z_watermarked = 0.0;
    double mean_z_human = 0.0;
    double var_z_watermarked = 0.0;
    double var_z_human = 0.0;
    std::vector<RocPoint> roc;     // thresholds descending in TPR/FPR
    double tpr_at_fpr0 = 0.0;      // threshold = max human z, strictly above
    double tpr_at_fpr1 = 0.0;
    double tpr_at_fpr5 = 0.0;
    double f1_at_fpr1 = 0.0;
    double f1_at_fpr5 = 0.0;
    double best_f1 = 0.0;
};

/// Scores both corpora under `scheme` and sweeps thresholds over the observed
/// z values. TPR@FPR=x picks the smallest threshold with empirical FPR <= x.
/// Unscorable records are counted as degenerate, not fatal.
/// Throws EmptyCorpus when either list is empty or nothing is scorable.
CorpusSummary evaluate_corpus(const std::vector<SequenceRecord>& watermarked,
                              const std::vector<SequenceRecord>& human,
                              const WatermarkParams& params, Scheme scheme);

/// ROC/threshold sweep over already-computed per-record z scores.
/// Throws EmptyCorpus when either side is empty.
CorpusSummary summarize_scores(std::span<const double> z_watermarked,
                               std::span<const double> z_human, Scheme scheme);

/// z at every prefix length of the scored sequence; prefixes on which the
/// statistic is undefined (nothing above tau yet, zero weights) are skipped.
std::vector<std::pair<int64_t, double>> z_vs_length(const SequenceRecord& rec,
                                                    const WatermarkParams& params, Scheme scheme);

/// Synthetic token-edit attack: each token is independently replaced by a
/// uniform random id with probability edit_rate. Label and prompt survive.
SequenceRecord perturb_attack(const SequenceRecord& rec, double edit_rate, int vocab_size,
                              uint64_t rng_seed);

} // namespace bimark
