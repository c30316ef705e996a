#include "bimark/generate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "bimark/stats.hpp"

namespace bimark {

std::string sampler_name(const Sampler& sampler) {
    struct Visitor {
        std::string operator()(const GreedySampler&) const { return "greedy"; }
        std::string operator()(const MultinomialSampler& m) const {
            return "multinomial(t=" + std::to_string(m.temperature) + ")";
        }
    };
    return std::visit(Visitor{}, sampler);
}

double GenerationConfig::effective_entropy_modulus() const {
    if (entropy_modulus) return *entropy_modulus;
    return bound_modulus(params.gamma, params.delta);
}

void GenerationConfig::validate() const {
    params.validate();
    if (max_tokens < 1) raise(Errc::ConfigError, "max_tokens: must be at least 1");
    if (const auto* m = std::get_if<MultinomialSampler>(&sampler)) {
        if (!(m->temperature > 0.0))
            raise(Errc::ConfigError, "sampler.temperature: must be positive");
    }
    if (prompt.size() < static_cast<size_t>(params.context_width))
        raise(Errc::InsufficientContext,
              "prompt must supply at least context_width tokens to seed the first partition");
    for (TokenId t : prompt)
        if (t < 0 || t >= params.vocab_size)
            raise(Errc::ConfigError, "prompt token " + std::to_string(t) + " outside vocabulary");
    if (entropy_modulus && *entropy_modulus < 0.0)
        raise(Errc::ConfigError, "entropy_modulus: must be nonnegative");
}

double GenerationTrace::mean_entropy() const {
    if (entropies.empty()) return 0.0;
    return std::accumulate(entropies.begin(), entropies.end(), 0.0) /
           static_cast<double>(entropies.size());
}

void apply_bipolar_bias(std::span<double> logits, const PartitionOutcome& outcome, double delta) {
    if (logits.size() != outcome.split.in_list1.size())
        raise(Errc::ShapeError, "logit vector length does not match the partition vocabulary");
    for (TokenId t : outcome.split.list1) logits[static_cast<size_t>(t)] += delta;
}

namespace {

void softmax_into(std::span<const double> logits, std::vector<double>& probs) {
    probs.resize(logits.size());
    const double top = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (size_t k = 0; k < logits.size(); ++k) {
        probs[k] = std::exp(logits[k] - top);
        sum += probs[k];
    }
    for (double& p : probs) p /= sum;
}

uint64_t hash_distribution(std::span<const double> probs) {
    const size_t stride = std::max<size_t>(1, probs.size() / 256);
    uint64_t state = absorb64(kGolden64, probs.size());
    for (size_t k = 0; k < probs.size(); k += stride)
        state = absorb64(state, std::bit_cast<uint64_t>(probs[k]));
    return state;
}

TokenId sample_token(std::span<const double> probs, std::span<const double> logits,
                     const Sampler& sampler, SeedStream& rng) {
    if (std::holds_alternative<GreedySampler>(sampler)) {
        return static_cast<TokenId>(
            std::distance(logits.begin(), std::max_element(logits.begin(), logits.end())));
    }
    const double u = rng.next_unit();
    double cum = 0.0;
    for (size_t k = 0; k < probs.size(); ++k) {
        cum += probs[k];
        if (u < cum) return static_cast<TokenId>(k);
    }
    return static_cast<TokenId>(probs.size() - 1);
}

} // namespace

GenerationTrace generate(const Model& model, const GenerationConfig& cfg) {
    cfg.validate();
    if (model.vocab_size() < 2) raise(Errc::ConfigError, "model vocabulary is empty or trivial");
    if (model.vocab_size() != cfg.params.vocab_size)
        raise(Errc::ConfigError, "model vocab_size does not match watermark params");

    const WatermarkParams& wp = cfg.params;
    const size_t vocab = static_cast<size_t>(wp.vocab_size);
    const double modulus = cfg.effective_entropy_modulus();
    const double inv_temp = [&] {
        if (const auto* m = std::get_if<MultinomialSampler>(&cfg.sampler))
            return 1.0 / m->temperature;
        return 1.0;
    }();
    const bool thresholded = is_thresholded(wp.scheme);

    GenerationTrace trace;
    trace.prompt = cfg.prompt;
    trace.tokens.reserve(static_cast<size_t>(cfg.max_tokens));
    trace.polarities.reserve(static_cast<size_t>(cfg.max_tokens));
    trace.green_flags.reserve(static_cast<size_t>(cfg.max_tokens));
    trace.entropies.reserve(static_cast<size_t>(cfg.max_tokens));
    trace.prob_hashes.reserve(static_cast<size_t>(cfg.max_tokens));

    std::vector<TokenId> context = cfg.prompt;
    context.reserve(cfg.prompt.size() + static_cast<size_t>(cfg.max_tokens));
    std::vector<double> logits(vocab);
    std::vector<double> probs;
    PartitionOutcome outcome;
    PartitionScratch scratch;
    SeedStream sampler_rng(cfg.sampler_seed);

    for (int i = 0; i < cfg.max_tokens; ++i) {
        try {
            model.next_logits(context, logits);
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            raise(Errc::ModelError, e.what());
        }
        for (double& l : logits) {
            if (!std::isfinite(l)) raise(Errc::ModelError, "model produced a non-finite logit");
            l *= inv_temp;
        }

        derive_outcome_into(outcome, scratch, wp.key, context, wp.partition(), wp.policy,
                            static_cast<size_t>(i));

        softmax_into(logits, probs);
        const double se = spike_entropy(probs, modulus);
        trace.prob_hashes.push_back(hash_distribution(probs));

        const bool boosted = wp.delta != 0.0 && !(thresholded && se <= wp.tau);
        if (boosted) {
            apply_bipolar_bias(logits, outcome, wp.delta * inv_temp);
            softmax_into(logits, probs);
        }

        const TokenId token = sample_token(probs, logits, cfg.sampler, sampler_rng);
        const TokenClass cls = classify_token(token, outcome);

        trace.tokens.push_back(token);
        trace.polarities.push_back(cls.polarity);
        trace.green_flags.push_back(cls.is_green ? 1 : 0);
        trace.entropies.push_back(se);
        context.push_back(token);
    }
    return trace;
}

GenerationTrace generate_null(const Model& model, GenerationConfig cfg) {
    // Resolve the trace modulus from the configured (gamma, delta) before
    // zeroing the bias so the control corpus stays detector-compatible.
    cfg.entropy_modulus = cfg.effective_entropy_modulus();
    cfg.params.delta = 0.0;
    return generate(model, cfg);
}

} // namespace bimark
