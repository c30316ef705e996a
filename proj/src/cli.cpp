#include "bimark/cli.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "bimark/harness.hpp"
#include "bimark/parallel.hpp"
#include "bimark/prng.hpp"

namespace bimark {

using nlohmann::json;

RunConfig apply_overrides(RunConfig cfg, const CliOverrides& ov) {
    if (ov.gamma) cfg.params.gamma = *ov.gamma;
    if (ov.delta) cfg.params.delta = *ov.delta;
    if (ov.key_hex) cfg.params.key = WatermarkKey::from_hex(*ov.key_hex);
    if (ov.threshold) cfg.params.threshold = *ov.threshold;
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.tokens) cfg.tokens = *ov.tokens;
    if (ov.scheme) {
        const auto parsed = scheme_from_name(*ov.scheme);
        if (!parsed) raise(Errc::ConfigError, "scheme: unknown scheme '" + *ov.scheme + "'");
        cfg.params.scheme = *parsed;
    }
    if (ov.policy) {
        if (*ov.policy == "pseudo_random") cfg.params.policy = PseudoRandomPolarity{};
        else if (*ov.policy == "position_cycle") cfg.params.policy = PositionCyclePolarity{};
        else if (*ov.policy == "hard_split")
            cfg.params.policy = HardSplitPolarity{0.5, cfg.tokens};
        else
            raise(Errc::ConfigError, "policy: unknown policy '" + *ov.policy + "'");
    }
    if (ov.rho) {
        if (auto* p = std::get_if<PseudoRandomPolarity>(&cfg.params.policy)) p->rho = *ov.rho;
        else if (auto* hsp = std::get_if<HardSplitPolarity>(&cfg.params.policy)) hsp->rho = *ov.rho;
        else
            raise(Errc::ConfigError, "rho: the position_cycle policy takes no rho");
    }
    cfg.params.validate();
    return cfg;
}

int cmd_generate(const std::filesystem::path& config_path, const CliOverrides& ov, int n,
                 const std::filesystem::path& out_path, bool length_jitter, std::string& err) {
    try {
        RunConfig cfg = apply_overrides(load_config(config_path, env_key_override()), ov);
        if (n < 0) raise(Errc::ConfigError, "n: must be nonnegative");
        cfg.model.vocab_size = cfg.params.vocab_size;
        const auto model = make_synthetic_model(cfg.model);
        const bool watermarked = cfg.params.delta > 0.0;

        std::vector<SequenceRecord> records(static_cast<size_t>(n));
        parallel_for(static_cast<size_t>(n), [&](size_t i) {
            const uint64_t seq_seed = absorb64(cfg.seed, static_cast<uint64_t>(i));
            GenerationConfig gen;
            gen.params = cfg.params;
            gen.sampler = cfg.sampler;
            gen.sampler_seed = absorb64(seq_seed, 0xB0B);
            gen.entropy_modulus = cfg.entropy_modulus;
            int tokens = cfg.tokens;
            if (length_jitter || cfg.length_jitter) {
                SeedStream jitter(absorb64(seq_seed, 0x717));
                tokens = cfg.tokens - 5 + static_cast<int>(jitter.next_below(11));
            }
            gen.max_tokens = std::max(1, tokens);
            SeedStream prompt_rng(absorb64(seq_seed, 0xA11CE));
            gen.prompt.resize(static_cast<size_t>(std::max(4, cfg.params.context_width)));
            for (TokenId& t : gen.prompt)
                t = static_cast<TokenId>(
                    prompt_rng.next_below(static_cast<uint64_t>(cfg.params.vocab_size)));
            const GenerationTrace trace = generate(*model, gen);
            char id[32];
            std::snprintf(id, sizeof(id), "%c%06zu", watermarked ? 'w' : 'h', i);
            records[i] = trace_to_record(trace, id,
                                         watermarked ? Label::Watermarked : Label::Human);
        });
        write_corpus(out_path, records);
        return 0;
    } catch (const Error& e) {
        err = e.what();
        return 1;
    }
}

int cmd_detect(const std::filesystem::path& config_path, const CliOverrides& ov,
               const std::filesystem::path& in_path, const std::filesystem::path& out_path,
               std::string& err) {
    try {
        const RunConfig cfg = apply_overrides(load_config(config_path, env_key_override()), ov);
        const CorpusReadResult corpus = read_corpus(in_path);
        if (corpus.records.empty())
            raise(Errc::EmptyCorpus, in_path.string() + " holds no records");

        std::ostringstream out;
        out << json{{"format", "scores"},
                    {"version",
                     std::to_string(kFormatMajor) + "." + std::to_string(kFormatMinor)}}
                   .dump()
            << "\n";

        size_t failures = corpus.line_errors.size();
        for (const std::string& line_err : corpus.line_errors)
            out << json{{"error", line_err}}.dump() << "\n";

        std::vector<double> z_watermarked, z_human, z_all;
        size_t flagged = 0;
        for (const SequenceRecord& rec : corpus.records) {
            json row;
            row["id"] = rec.id;
            row["scheme"] = scheme_name(cfg.params.scheme);
            try {
                const ScoreReport r = score_sequence(rec, cfg.params, cfg.params.scheme);
                row["z"] = r.z;
                row["p_value"] = r.p;
                row["scored_tokens"] = r.scored_tokens;
                row["watermarked"] = r.is_watermarked;
                row["threshold"] = r.threshold;
                z_all.push_back(r.z);
                if (rec.label == Label::Watermarked) z_watermarked.push_back(r.z);
                if (rec.label == Label::Human) z_human.push_back(r.z);
                if (r.is_watermarked) ++flagged;
            } catch (const Error& e) {
                row["error"] = e.what();
                ++failures;
            }
            out << row.dump() << "\n";
        }

        json summary;
        summary["records"] = corpus.records.size();
        summary["scored"] = z_all.size();
        summary["failures"] = failures;
        summary["flagged"] = flagged;
        if (!z_all.empty()) {
            summary["mean_z"] = mean_of(z_all);
            summary["var_z"] = variance_of(z_all);
        }
        if (!z_watermarked.empty() && !z_human.empty()) {
            const CorpusSummary cs =
                summarize_scores(z_watermarked, z_human, cfg.params.scheme);
            summary["mean_z_watermarked"] = cs.mean_z_watermarked;
            summary["mean_z_human"] = cs.mean_z_human;
            summary["tpr_at_fpr0"] = cs.tpr_at_fpr0;
            summary["tpr_at_fpr1"] = cs.tpr_at_fpr1;
            summary["tpr_at_fpr5"] = cs.tpr_at_fpr5;
            summary["best_f1"] = cs.best_f1;
        }
        out << json{{"summary", summary}}.dump() << "\n";
        write_text_atomic(out_path, out.str());
        return failures > 0 ? 2 : 0;
    } catch (const Error& e) {
        err = e.what();
        return 1;
    }
}

int cmd_simulate(const std::string& name_or_spec_file, std::optional<uint64_t> base_seed,
                 const std::filesystem::path& out_dir, std::string& err) {
    try {
        std::optional<ExperimentResult> result =
            run_builtin_experiment(name_or_spec_file, base_seed.value_or(2026), out_dir);
        if (!result) {
            const std::filesystem::path spec_path(name_or_spec_file);
            if (!std::filesystem::exists(spec_path)) {
                std::ostringstream msg;
                msg << "unknown experiment '" << name_or_spec_file << "'; built-ins:";
                for (const std::string& n : builtin_experiment_names()) msg << " " << n;
                raise(Errc::ConfigError, msg.str());
            }
            ExperimentSpec spec = load_experiment_spec(spec_path);
            if (base_seed) spec.base_seed = *base_seed;
            result = run_experiment(spec, out_dir);
        }
        std::cout << result->report_text;
        return 0;
    } catch (const Error& e) {
        err = e.what();
        return 1;
    }
}

} // namespace bimark
