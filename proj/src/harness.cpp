#include "bimark/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "bimark/parallel.hpp"
#include "bimark/partition.hpp"
#include "bimark/prng.hpp"

namespace bimark {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string fmt(double v, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

WatermarkParams base_params(const ExperimentSpec& spec, double gamma, double delta, double rho) {
    WatermarkParams p;
    p.gamma = gamma;
    p.delta = delta;
    p.key = WatermarkKey::from_hex(spec.key_hex);
    p.context_width = 1;
    p.vocab_size = spec.model.vocab_size;
    switch (spec.policy_kind) {
        case PolicyKind::PseudoRandom: p.policy = PseudoRandomPolarity{rho}; break;
        case PolicyKind::HardSplit: p.policy = HardSplitPolarity{rho, spec.tokens}; break;
        case PolicyKind::PositionCycle:
            p.policy = PositionCyclePolarity{spec.cycle_pos, spec.cycle_neg};
            break;
    }
    return p;
}

double resolved_rho(const PolarityPolicy& policy, int tokens) {
    struct Visitor {
        int tokens;
        double operator()(const PseudoRandomPolarity& p) const { return p.rho; }
        double operator()(const HardSplitPolarity& p) const {
            const double n_pos = std::floor(p.rho * p.total_tokens + 0.5);
            return n_pos / static_cast<double>(p.total_tokens);
        }
        double operator()(const PositionCyclePolarity& p) const {
            return static_cast<double>(p.k_pos) / static_cast<double>(p.k_pos + p.k_neg);
        }
    };
    return std::visit(Visitor{tokens}, policy);
}

double corpus_mean_entropy(const std::vector<SequenceRecord>& records) {
    double sum = 0.0;
    size_t n = 0;
    for (const SequenceRecord& rec : records) {
        if (!rec.entropies) continue;
        for (double e : *rec.entropies) sum += e;
        n += rec.entropies->size();
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

BoundInputs bound_inputs_for(const WatermarkParams& params, int tokens, double s_star) {
    BoundInputs b;
    b.gamma = params.gamma;
    b.delta = params.delta;
    const double rho = resolved_rho(params.policy, tokens);
    b.total_pos = rho * tokens;
    b.total_neg = (1.0 - rho) * tokens;
    b.s_star = s_star;
    return b;
}

const char* kCellsCsvHeader =
    "experiment,gamma,delta,rho,scheme,n_watermarked,n_human,scored_watermarked,scored_human,"
    "degenerate,mean_z_w,se_z_w,var_z_w,mean_z_h,var_z_h,tpr_at_fpr0,tpr_at_fpr1,tpr_at_fpr5,"
    "f1_at_fpr1,f1_at_fpr5,best_f1,s_star,bound_unipolar,bound_diff,note";

std::string cell_csv_row(const std::string& experiment, const CellResult& c) {
    std::ostringstream out;
    out << experiment << ',' << fmt(c.gamma) << ',' << fmt(c.delta) << ',' << fmt(c.rho) << ','
        << scheme_name(c.scheme) << ',' << c.summary.n_watermarked << ',' << c.summary.n_human
        << ',' << c.summary.scored_watermarked << ',' << c.summary.scored_human << ','
        << c.summary.degenerate << ',' << fmt(c.summary.mean_z_watermarked) << ','
        << fmt(c.se_z_watermarked) << ',' << fmt(c.summary.var_z_watermarked) << ','
        << fmt(c.summary.mean_z_human) << ',' << fmt(c.summary.var_z_human) << ','
        << fmt(c.summary.tpr_at_fpr0) << ',' << fmt(c.summary.tpr_at_fpr1) << ','
        << fmt(c.summary.tpr_at_fpr5) << ',' << fmt(c.summary.f1_at_fpr1) << ','
        << fmt(c.summary.f1_at_fpr5) << ',' << fmt(c.summary.best_f1) << ',' << fmt(c.s_star)
        << ',' << fmt(c.bound_unipolar) << ',' << fmt(c.bound_diff) << ',' << c.note;
    return out.str();
}

void assemble_outputs(ExperimentResult& result, const std::filesystem::path& out_dir,
                      const std::string& extra_csv_name = {},
                      const std::string& extra_csv_body = {}) {
    std::ostringstream csv;
    csv << "# " << result.name << " cells v" << kFormatMajor << "." << kFormatMinor << "\n"
        << kCellsCsvHeader << "\n";
    for (const CellResult& c : result.cells) csv << cell_csv_row(result.name, c) << "\n";
    result.cells_csv = csv.str();

    std::ostringstream rep;
    rep << "experiment: " << result.name << "\n";
    rep << result.report_text;
    rep << "\nchecks:\n";
    for (const CheckResult& c : result.checks)
        rep << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name
            << (c.detail.empty() ? "" : " — " + c.detail) << "\n";
    result.report_text = rep.str();

    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    const auto csv_path = out_dir / (result.name + "_cells.csv");
    const auto rep_path = out_dir / (result.name + "_report.txt");
    write_text_atomic(csv_path, result.cells_csv);
    write_text_atomic(rep_path, result.report_text);
    result.files_written.push_back(csv_path);
    result.files_written.push_back(rep_path);
    if (!extra_csv_name.empty()) {
        const auto extra_path = out_dir / extra_csv_name;
        write_text_atomic(extra_path, extra_csv_body);
        result.files_written.push_back(extra_path);
    }
}

} // namespace

double mean_of(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance_of(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return acc / static_cast<double>(xs.size() - 1);
}

double stderr_of(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::sqrt(variance_of(xs) / static_cast<double>(xs.size()));
}

void ExperimentSpec::validate() const {
    model.validate();
    if (gammas.empty() || deltas.empty()) raise(Errc::ConfigError, "gammas/deltas must be nonempty");
    if (schemes.empty()) raise(Errc::ConfigError, "schemes must be nonempty");
    if (n_watermarked < 1 || n_human < 1) raise(Errc::ConfigError, "corpus sizes must be positive");
    if (tokens < 1) raise(Errc::ConfigError, "tokens must be positive");
    if (!(edit_rate >= 0.0 && edit_rate < 1.0)) raise(Errc::ConfigError, "edit_rate in [0,1)");
    WatermarkKey::from_hex(key_hex);
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::ConfigError, "cannot open experiment spec " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        raise(Errc::ConfigError, std::string("experiment spec parse failure: ") + e.what());
    }

    ExperimentSpec spec;
    try {
        spec.name = j.value("name", "custom");
        spec.gammas = j.value("gammas", spec.gammas);
        spec.deltas = j.value("deltas", spec.deltas);
        spec.rhos = j.value("rhos", spec.rhos);
        spec.n_watermarked = j.value("n_watermarked", spec.n_watermarked);
        spec.n_human = j.value("n_human", spec.n_human);
        spec.tokens = j.value("tokens", spec.tokens);
        spec.base_seed = j.value("base_seed", spec.base_seed);
        spec.key_hex = j.value("key_hex", spec.key_hex);
        spec.edit_rate = j.value("edit_rate", spec.edit_rate);
        if (j.contains("schemes")) {
            spec.schemes.clear();
            for (const auto& s : j.at("schemes")) {
                const auto parsed = scheme_from_name(s.get<std::string>());
                if (!parsed) raise(Errc::ConfigError, "unknown scheme in experiment spec");
                spec.schemes.push_back(*parsed);
            }
        }
        if (j.contains("policy")) {
            const std::string kind = j.at("policy").value("type", "pseudo_random");
            if (kind == "pseudo_random") spec.policy_kind = PolicyKind::PseudoRandom;
            else if (kind == "hard_split") spec.policy_kind = PolicyKind::HardSplit;
            else if (kind == "position_cycle") {
                spec.policy_kind = PolicyKind::PositionCycle;
                spec.cycle_pos = j.at("policy").value("k_pos", 20);
                spec.cycle_neg = j.at("policy").value("k_neg", 20);
            } else
                raise(Errc::ConfigError, "unknown policy type in experiment spec");
        }
        if (j.contains("sampler")) {
            const std::string type = j.at("sampler").value("type", "multinomial");
            if (type == "greedy") spec.sampler = GreedySampler{};
            else if (type == "multinomial")
                spec.sampler = MultinomialSampler{j.at("sampler").value("temperature", 0.7)};
            else
                raise(Errc::ConfigError, "unknown sampler type in experiment spec");
        }
        if (j.contains("model")) {
            const json& m = j.at("model");
            spec.model.vocab_size = m.value("vocab_size", spec.model.vocab_size);
            spec.model.rng_seed = m.value("seed", spec.model.rng_seed);
            const std::string profile = m.value("profile", "uniform");
            if (profile == "uniform") spec.model.profile = UniformProfile{};
            else if (profile == "peaked")
                spec.model.profile = PeakedProfile{m.value("concentration", 10.0)};
            else if (profile == "mixed")
                spec.model.profile = MixedProfile{m.value("low_entropy_fraction", 0.5),
                                                  m.value("concentration", 10.0)};
            else
                raise(Errc::ConfigError, "unknown model profile in experiment spec");
        }
    } catch (const json::exception& e) {
        raise(Errc::ConfigError, std::string("experiment spec field error: ") + e.what());
    }
    spec.validate();
    return spec;
}

bool ExperimentResult::all_checks_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<SequenceRecord> make_corpus(const Model& model, const CorpusParams& cp, int n,
                                        uint64_t corpus_seed, bool watermarked) {
    std::vector<SequenceRecord> records(static_cast<size_t>(n));
    parallel_for(static_cast<size_t>(n), [&](size_t i) {
        const uint64_t seq_seed = absorb64(corpus_seed, static_cast<uint64_t>(i));
        GenerationConfig cfg;
        cfg.params = cp.params;
        cfg.sampler = cp.sampler;
        cfg.max_tokens = cp.tokens;
        cfg.sampler_seed = absorb64(seq_seed, 0xB0B);
        cfg.entropy_modulus = cp.entropy_modulus;

        SeedStream prompt_rng(absorb64(seq_seed, 0xA11CE));
        cfg.prompt.resize(static_cast<size_t>(std::max(cp.prompt_len, cp.params.context_width)));
        for (TokenId& t : cfg.prompt)
            t = static_cast<TokenId>(
                prompt_rng.next_below(static_cast<uint64_t>(cp.params.vocab_size)));

        const GenerationTrace trace =
            watermarked ? generate(model, cfg) : generate_null(model, cfg);
        char id[32];
        std::snprintf(id, sizeof(id), "%c%06zu", watermarked ? 'w' : 'h', i);
        records[i] = trace_to_record(trace, id, watermarked ? Label::Watermarked : Label::Human);
    });
    return records;
}

ScoredCorpus score_corpus(const std::vector<SequenceRecord>& records,
                          const WatermarkParams& params, std::span<const Scheme> schemes) {
    struct Slot {
        std::map<Scheme, double> z;
        std::map<Scheme, bool> degenerate;
    };
    std::vector<Slot> slots(records.size());
    parallel_for(records.size(), [&](size_t i) {
        const SequenceClassification cls = classify_sequence(records[i], params);
        for (Scheme s : schemes) {
            try {
                slots[i].z[s] = score_classified(cls, params, s).z;
            } catch (const Error& e) {
                if (e.code() == Errc::NoScorableTokens || e.code() == Errc::MissingEntropyTrace ||
                    e.code() == Errc::EmptySequence)
                    slots[i].degenerate[s] = true;
                else
                    throw;
            }
        }
    });

    ScoredCorpus out;
    for (Scheme s : schemes) {
        out.z[s] = {};
        out.degenerate[s] = 0;
    }
    for (const Slot& slot : slots)
        for (Scheme s : schemes) {
            if (auto it = slot.z.find(s); it != slot.z.end()) out.z[s].push_back(it->second);
            else if (slot.degenerate.count(s)) out.degenerate[s] += 1;
        }
    return out;
}

BoundAudit run_bound_audit(std::span<const BoundInputs> grid) {
    BoundAudit audit;
    audit.rows = theorem1_check(grid);
    std::ostringstream csv;
    csv << "# bound audit v" << kFormatMajor << "." << kFormatMinor << "\n";
    csv << "gamma,delta,s_star,total_pos,total_neg,bound_diff,bound_unipolar,gap,holds,tie\n";
    for (const Theorem1Row& row : audit.rows) {
        if (!row.holds) audit.violations += 1;
        if (row.tie) audit.ties += 1;
        csv << fmt(row.inputs.gamma) << ',' << fmt(row.inputs.delta) << ','
            << fmt(row.inputs.s_star) << ',' << fmt(row.inputs.total_pos) << ','
            << fmt(row.inputs.total_neg) << ',' << fmt(row.bound_diff) << ','
            << fmt(row.bound_unipolar) << ',' << fmt(row.bound_diff - row.bound_unipolar) << ','
            << (row.holds ? 1 : 0) << ',' << (row.tie ? 1 : 0) << "\n";
    }
    audit.csv = csv.str();
    return audit;
}

// ---------------------------------------------------------------------------
// Generic grid runner
// ---------------------------------------------------------------------------

ExperimentResult run_experiment(const ExperimentSpec& spec, const std::filesystem::path& out_dir) {
    spec.validate();
    const auto model = make_synthetic_model(spec.model);

    ExperimentResult result;
    result.name = spec.name;
    std::ostringstream rep;
    rep << "model: " << profile_name(spec.model.profile) << " |V|=" << spec.model.vocab_size
        << "  sampler: " << sampler_name(spec.sampler) << "  T=" << spec.tokens
        << "  n=" << spec.n_watermarked << "+" << spec.n_human
        << "  base_seed=" << spec.base_seed << "\n";
    if (spec.edit_rate > 0.0) rep << "token-edit attack rate: " << fmt(spec.edit_rate) << "\n";

    for (size_t gi = 0; gi < spec.gammas.size(); ++gi) {
        const double gamma = spec.gammas[gi];
        const std::vector<double> rhos =
            spec.rhos.empty() ? std::vector<double>{1.0 - gamma} : spec.rhos;
        for (size_t di = 0; di < spec.deltas.size(); ++di) {
            const double delta = spec.deltas[di];
            for (size_t ri = 0; ri < rhos.size(); ++ri) {
                const uint64_t cell_seed = absorb64(
                    absorb64(absorb64(spec.base_seed, gi), di), ri);

                WatermarkParams params = base_params(spec, gamma, delta, rhos[ri]);
                CorpusParams cp;
                cp.params = params;
                cp.sampler = spec.sampler;
                cp.tokens = spec.tokens;
                cp.entropy_modulus = bound_modulus(gamma, delta);

                std::vector<SequenceRecord> wm =
                    make_corpus(*model, cp, spec.n_watermarked, absorb64(cell_seed, 1), true);
                const std::vector<SequenceRecord> human =
                    make_corpus(*model, cp, spec.n_human, absorb64(cell_seed, 2), false);
                if (spec.edit_rate > 0.0) {
                    for (size_t i = 0; i < wm.size(); ++i)
                        wm[i] = perturb_attack(wm[i], spec.edit_rate, params.vocab_size,
                                               absorb64(cell_seed, 0xED17 + i));
                }

                const double s_star = corpus_mean_entropy(wm);
                const ScoredCorpus zw = score_corpus(wm, params, spec.schemes);
                const ScoredCorpus zh = score_corpus(human, params, spec.schemes);

                for (Scheme scheme : spec.schemes) {
                    CellResult cell;
                    cell.gamma = gamma;
                    cell.delta = delta;
                    cell.rho = rhos[ri];
                    cell.scheme = scheme;
                    cell.s_star = s_star;
                    const BoundInputs b = bound_inputs_for(params, spec.tokens, s_star);
                    cell.bound_unipolar = z_bound_kgw(b);
                    cell.bound_diff = z_bound_bimarker(b);
                    const auto& zws = zw.z.at(scheme);
                    const auto& zhs = zh.z.at(scheme);
                    if (zws.empty() || zhs.empty()) {
                        cell.note = "degenerate: no scorable records";
                        cell.summary.scheme = scheme;
                        cell.summary.n_watermarked = wm.size();
                        cell.summary.n_human = human.size();
                        cell.summary.degenerate =
                            zw.degenerate.at(scheme) + zh.degenerate.at(scheme);
                    } else {
                        cell.summary = summarize_scores(zws, zhs, scheme);
                        cell.summary.n_watermarked = wm.size();
                        cell.summary.n_human = human.size();
                        cell.summary.degenerate =
                            zw.degenerate.at(scheme) + zh.degenerate.at(scheme);
                        cell.se_z_watermarked = stderr_of(zws);
                    }
                    result.cells.push_back(cell);
                }
            }
        }
    }

    result.report_text = rep.str();
    assemble_outputs(result, out_dir);
    return result;
}

// ---------------------------------------------------------------------------
// Built-in experiments
// ---------------------------------------------------------------------------

namespace {

constexpr const char* kDefaultKeyHex = "a1b2c3d4e5f60718293a4b5c6d7e8f90";
constexpr int kDeskVocab = 1024;

WatermarkParams desk_params(double gamma, double delta, PolarityPolicy policy) {
    WatermarkParams p;
    p.gamma = gamma;
    p.delta = delta;
    p.key = WatermarkKey::from_hex(kDefaultKeyHex);
    p.context_width = 1;
    p.vocab_size = kDeskVocab;
    p.policy = std::move(policy);
    return p;
}

/// FPR comparison slack: two pooled-estimate binomial standard errors.
double pooled_fpr_ci(double fpr_a, double fpr_b, double n) {
    const double pooled = 0.5 * (fpr_a + fpr_b);
    return std::sqrt(std::max(pooled * (1.0 - pooled), 1e-12) / n);
}

} // namespace

ExperimentResult experiment_null_calibration(uint64_t base_seed,
                                             const std::filesystem::path& out_dir,
                                             int n_sequences) {
    ExperimentResult result;
    result.name = "null_calibration";

    WatermarkParams params = desk_params(0.5, 0.0, PseudoRandomPolarity{0.5});
    SyntheticModelSpec model_spec;
    model_spec.vocab_size = kDeskVocab;
    model_spec.rng_seed = absorb64(base_seed, 0x111);
    const auto model = make_synthetic_model(model_spec);

    CorpusParams cp;
    cp.params = params;
    cp.sampler = MultinomialSampler{1.0};
    cp.tokens = 200;
    const std::vector<SequenceRecord> corpus =
        make_corpus(*model, cp, n_sequences, absorb64(base_seed, 0x222), false);

    const Scheme schemes[] = {Scheme::Kgw, Scheme::BiMarker};
    WatermarkParams detect_params = params;
    detect_params.delta = 0.0;
    const ScoredCorpus scored = score_corpus(corpus, detect_params, schemes);

    std::ostringstream rep;
    rep << "null corpus: " << n_sequences << " sequences, T=200, gamma=0.5, rho=0.5\n";
    const double n = static_cast<double>(n_sequences);
    for (Scheme s : schemes) {
        const auto& z = scored.z.at(s);
        const double mean = mean_of(z);
        const double var = variance_of(z);
        const auto exceed4 =
            std::count_if(z.begin(), z.end(), [](double v) { return v > 4.0; });
        rep << scheme_name(s) << ": mean z = " << fmt(mean, 4) << ", var z = " << fmt(var, 4)
            << ", z>4 count = " << exceed4 << " / " << n_sequences << "\n";

        result.checks.push_back({std::string(scheme_name(s)) + " mean in [-0.05,0.05]",
                                 std::fabs(mean) <= 0.05, "mean=" + fmt(mean, 5)});
        result.checks.push_back({std::string(scheme_name(s)) + " var in [0.9,1.1]",
                                 var >= 0.9 && var <= 1.1, "var=" + fmt(var, 5)});
        result.checks.push_back({std::string(scheme_name(s)) + " z>4 count <= 3",
                                 exceed4 <= 3,
                                 "count=" + std::to_string(exceed4) +
                                     " (Gaussian tail expectation ~" + fmt(n * 3.167e-5, 2) + ")"});

        CellResult cell;
        cell.gamma = 0.5;
        cell.delta = 0.0;
        cell.rho = 0.5;
        cell.scheme = s;
        cell.summary.scheme = s;
        cell.summary.n_human = corpus.size();
        cell.summary.scored_human = z.size();
        cell.summary.mean_z_human = mean;
        cell.summary.var_z_human = var;
        cell.note = "null-only cell";
        result.cells.push_back(cell);
    }

    // Differential-vs-unipolar false positive ordering on the same corpus.
    rep << "\nfalse positive rates on the shared null corpus (rule: z > t):\n";
    rep << "threshold, fpr_kgw, fpr_bimarker, allowed_excess\n";
    bool ordering_holds = true;
    const auto& zk = scored.z.at(Scheme::Kgw);
    const auto& zb = scored.z.at(Scheme::BiMarker);
    for (double t : {1.5, 2.0, 2.5, 3.0, 4.0}) {
        const double fk =
            static_cast<double>(std::count_if(zk.begin(), zk.end(), [&](double v) { return v > t; })) / n;
        const double fb =
            static_cast<double>(std::count_if(zb.begin(), zb.end(), [&](double v) { return v > t; })) / n;
        const double slack = 2.0 * pooled_fpr_ci(fk, fb, n);
        ordering_holds = ordering_holds && fb <= fk + slack;
        rep << fmt(t, 1) << ", " << fmt(fk, 6) << ", " << fmt(fb, 6) << ", " << fmt(slack, 6)
            << "\n";
    }
    result.checks.push_back({"fpr(bimarker) <= fpr(kgw) + 2ci at all thresholds", ordering_holds, ""});

    result.report_text = rep.str();
    assemble_outputs(result, out_dir);
    return result;
}

ExperimentResult experiment_theorem1_audit(const std::filesystem::path& out_dir) {
    ExperimentResult result;
    result.name = "theorem1_audit";

    const std::vector<BoundInputs> grid = default_theorem1_grid();
    const BoundAudit audit = run_bound_audit(grid);

    std::ostringstream rep;
    rep << "grid points: " << audit.rows.size() << ", violations: " << audit.violations
        << ", exact ties: " << audit.ties << "\n";
    rep << "tie cells (bound_diff == bound_unipolar within 1e-12):\n";
    bool tie_at_half_sone = false;
    for (const Theorem1Row& row : audit.rows)
        if (row.tie) {
            rep << "  gamma=" << fmt(row.inputs.gamma) << " delta=" << fmt(row.inputs.delta)
                << " s_star=" << fmt(row.inputs.s_star) << "\n";
            if (row.inputs.gamma == 0.5 && row.inputs.s_star == 1.0) tie_at_half_sone = true;
        }

    result.checks.push_back({"zero dominance violations", audit.violations == 0,
                             std::to_string(audit.violations) + " of " +
                                 std::to_string(audit.rows.size())});
    result.checks.push_back({"tie detected at gamma=0.5, s_star=1", tie_at_half_sone, ""});

    for (const Theorem1Row& row : audit.rows) {
        CellResult cell;
        cell.gamma = row.inputs.gamma;
        cell.delta = row.inputs.delta;
        cell.rho = row.inputs.total_pos / row.inputs.total();
        cell.scheme = Scheme::BiMarker;
        cell.s_star = row.inputs.s_star;
        cell.bound_unipolar = row.bound_unipolar;
        cell.bound_diff = row.bound_diff;
        cell.note = row.tie ? "tie" : (row.holds ? "" : "violation");
        result.cells.push_back(cell);
    }

    result.report_text = rep.str();
    assemble_outputs(result, out_dir, "theorem1_audit_grid.csv", audit.csv);
    return result;
}

ExperimentResult experiment_theorem2(uint64_t base_seed, const std::filesystem::path& out_dir,
                                     int n_sequences) {
    ExperimentResult inner = experiment_null_calibration(base_seed, "", n_sequences);
    ExperimentResult result;
    result.name = "theorem2";
    result.cells = std::move(inner.cells);
    std::string body = inner.report_text;
    body.erase(0, body.find('\n') + 1);          // drop the inner banner line
    body.erase(body.find("\nchecks:"));          // checks are re-assembled below
    result.report_text = body;
    for (CheckResult& c : inner.checks)
        if (c.name.find("fpr(") == 0) result.checks.push_back(std::move(c));
    assemble_outputs(result, out_dir);
    return result;
}

ExperimentResult experiment_rho_sweep(uint64_t base_seed, const std::filesystem::path& out_dir,
                                      int n_per_cell) {
    ExperimentResult result;
    result.name = "rho_sweep";

    SyntheticModelSpec model_spec;
    model_spec.vocab_size = kDeskVocab;
    model_spec.rng_seed = absorb64(base_seed, 0x333);
    const auto model = make_synthetic_model(model_spec);

    std::ostringstream rep;
    rep << "hard-split polarity sweep, delta=1.5, multinomial(0.7), T=200, n=" << n_per_cell
        << " watermarked sequences per gamma\n";
    rep << "generation is polarity-independent, so each gamma reuses one corpus across rho;\n";
    rep << "the split is re-derived at scoring time. With exact polarity recovery the\n";
    rep << "differential statistic re-expresses the plain green count, so the curve is flat\n";
    rep << "and the optimum at rho = 1 - gamma is met as an exact within-ci tie.\n\n";

    // 0.1..0.9 plus the quarter points so each gamma's optimum 1-gamma is a cell
    const double kRhos[] = {0.1, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6, 0.7, 0.75, 0.8, 0.9};
    for (double gamma : {0.25, 0.5}) {
        WatermarkParams gen_params = desk_params(gamma, 1.5, HardSplitPolarity{0.5, 200});
        CorpusParams cp;
        cp.params = gen_params;
        cp.sampler = MultinomialSampler{0.7};
        cp.tokens = 200;
        const uint64_t corpus_seed = absorb64(absorb64(base_seed, 0x444), gamma == 0.25 ? 25 : 50);
        const std::vector<SequenceRecord> corpus =
            make_corpus(*model, cp, n_per_cell, corpus_seed, true);
        const double s_star = corpus_mean_entropy(corpus);

        rep << "gamma=" << fmt(gamma) << " (optimal rho = " << fmt(1.0 - gamma) << "):\n";
        double best_mean = -1e30, best_rho = 0.0, opt_mean = 0.0, opt_se = 0.0, best_se = 0.0;
        for (double rho : kRhos) {
            WatermarkParams params = gen_params;
            params.policy = HardSplitPolarity{rho, 200};
            const Scheme schemes[] = {Scheme::BiMarker};
            const ScoredCorpus scored = score_corpus(corpus, params, schemes);
            const auto& z = scored.z.at(Scheme::BiMarker);
            const double mean = mean_of(z);
            const double se = stderr_of(z);
            rep << "  rho=" << fmt(rho, 2) << ": mean z = " << fmt(mean, 4) << " (se "
                << fmt(se, 4) << ")\n";
            if (mean > best_mean) {
                best_mean = mean;
                best_rho = rho;
                best_se = se;
            }
            if (std::fabs(rho - (1.0 - gamma)) < 1e-9) {
                opt_mean = mean;
                opt_se = se;
            }

            CellResult cell;
            cell.gamma = gamma;
            cell.delta = 1.5;
            cell.rho = rho;
            cell.scheme = Scheme::BiMarker;
            cell.summary.scheme = Scheme::BiMarker;
            cell.summary.n_watermarked = corpus.size();
            cell.summary.scored_watermarked = z.size();
            cell.summary.mean_z_watermarked = mean;
            cell.se_z_watermarked = se;
            cell.s_star = s_star;
            const BoundInputs b = bound_inputs_for(params, 200, s_star);
            cell.bound_unipolar = z_bound_kgw(b);
            cell.bound_diff = z_bound_bimarker(b);
            result.cells.push_back(cell);
        }
        const double ci = 1.96 * std::sqrt(best_se * best_se + opt_se * opt_se);
        result.checks.push_back(
            {"gamma=" + fmt(gamma) + ": mean z at rho=" + fmt(1.0 - gamma) +
                 " within one ci of the sweep max",
             opt_mean >= best_mean - ci,
             "max " + fmt(best_mean, 4) + " at rho=" + fmt(best_rho, 2) + ", candidate " +
                 fmt(opt_mean, 4) + ", ci " + fmt(ci, 4)});
        rep << "\n";
    }

    result.report_text = rep.str();
    assemble_outputs(result, out_dir);
    return result;
}

ExperimentResult experiment_tpr_fpr_grid(uint64_t base_seed, const std::filesystem::path& out_dir,
                                         int n_per_class) {
    ExperimentResult result;
    result.name = "tpr_fpr_grid";

    SyntheticModelSpec model_spec;
    model_spec.vocab_size = kDeskVocab;
    model_spec.rng_seed = absorb64(base_seed, 0x555);
    const auto model = make_synthetic_model(model_spec);

    std::ostringstream rep;
    rep << "uniform synthetic model, gamma=0.5, T=200, multinomial(0.7), " << n_per_class << "+"
        << n_per_class << " sequences per delta\n";
    rep << "reference deltas reported for production-scale LLM corpora: about +10 TPR points\n";
    rep << "at delta=1.0 and +20 at delta=0.75 under a zero-false-positive threshold; synthetic\n";
    rep << "corpora have exactly calibrated nulls, so the two detectors tie here and those\n";
    rep << "magnitudes are recorded for reference only, not asserted.\n\n";

    const double gamma = 0.5;
    WatermarkParams params = desk_params(gamma, 0.0, PseudoRandomPolarity{1.0 - gamma});
    CorpusParams cp;
    cp.params = params;
    cp.sampler = MultinomialSampler{0.7};
    cp.tokens = 200;

    // The human corpus does not depend on delta: generate it once.
    cp.params.delta = 1.0; // modulus source for the control trace
    const std::vector<SequenceRecord> human =
        make_corpus(*model, cp, n_per_class, absorb64(base_seed, 0x666), false);

    const Scheme schemes[] = {Scheme::Kgw, Scheme::BiMarker};
    for (double delta : {0.5, 0.75, 1.0, 1.5, 2.0}) {
        WatermarkParams cell_params = desk_params(gamma, delta, PseudoRandomPolarity{0.5});
        CorpusParams wcp = cp;
        wcp.params = cell_params;
        wcp.entropy_modulus = bound_modulus(gamma, delta);
        const std::vector<SequenceRecord> wm = make_corpus(
            *model, wcp, n_per_class, absorb64(absorb64(base_seed, 0x777), std::llround(delta * 100)),
            true);
        const double s_star = corpus_mean_entropy(wm);

        const ScoredCorpus zw = score_corpus(wm, cell_params, schemes);
        const ScoredCorpus zh = score_corpus(human, cell_params, schemes);

        double tpr0[2] = {0, 0};
        for (int si = 0; si < 2; ++si) {
            const Scheme s = schemes[si];
            CellResult cell;
            cell.gamma = gamma;
            cell.delta = delta;
            cell.rho = 0.5;
            cell.scheme = s;
            cell.summary = summarize_scores(zw.z.at(s), zh.z.at(s), s);
            cell.se_z_watermarked = stderr_of(zw.z.at(s));
            cell.s_star = s_star;
            const BoundInputs b = bound_inputs_for(cell_params, 200, s_star);
            cell.bound_unipolar = z_bound_kgw(b);
            cell.bound_diff = z_bound_bimarker(b);
            result.cells.push_back(cell);
            tpr0[si] = cell.summary.tpr_at_fpr0;
            rep << "delta=" << fmt(delta, 2) << " " << scheme_name(s)
                << ": tpr@fpr0=" << fmt(cell.summary.tpr_at_fpr0, 4)
                << " tpr@1%=" << fmt(cell.summary.tpr_at_fpr1, 4)
                << " tpr@5%=" << fmt(cell.summary.tpr_at_fpr5, 4)
                << " f1@1%=" << fmt(cell.summary.f1_at_fpr1, 4)
                << " mean z=" << fmt(cell.summary.mean_z_watermarked, 3) << "\n";
        }
        if (delta <= 1.0)
            result.checks.push_back({"delta=" + fmt(delta, 2) + ": tpr@fpr0 bimarker >= kgw",
                                     tpr0[1] >= tpr0[0],
                                     "bimarker=" + fmt(tpr0[1], 4) + " kgw=" + fmt(tpr0[0], 4)});
        rep << "\n";
    }

    result.report_text = rep.str();
    assemble_outputs(result, out_dir);
    return result;
}

ExperimentResult experiment_low_entropy_suite(uint64_t base_seed,
                                              const std::filesystem::path& out_dir,
                                              int n_per_class) {
    ExperimentResult result;
    result.name = "low_entropy_suite";

    SyntheticModelSpec model_spec;
    model_spec.vocab_size = kDeskVocab;
    model_spec.profile = MixedProfile{0.5, 10.0};
    model_spec.rng_seed = absorb64(base_seed, 0x888);
    const auto model = make_synthetic_model(model_spec);

    const double gamma = 0.5, delta = 2.0;
    const double modulus = bound_modulus(gamma, delta);

    std::ostringstream rep;
    rep << "mixed synthetic model (half near-deterministic positions), gamma=0.5, delta=2,\n"
        << "T=200, n=" << n_per_class << "+" << n_per_class
        << "; cycle polarity 20/20 (15/15 for the thresholded pair)\n\n";

    struct Pair {
        Scheme base;
        Scheme diff;
        int cycle;
        bool gated; // entropy-gated bias at generation time
    };
    const Pair pairs[] = {{Scheme::Kgw, Scheme::BiMarker, 20, false},
                          {Scheme::Sweet, Scheme::SweetBi, 15, true},
                          {Scheme::Ewd, Scheme::EwdBi, 20, false}};

    // One full-bias corpus serves the kgw and ewd pairs; the thresholded pair
    // gets its own gated corpus. Controls are shared.
    for (const Pair& pair : pairs) {
        WatermarkParams params =
            desk_params(gamma, delta, PositionCyclePolarity{pair.cycle, pair.cycle});
        params.scheme = pair.gated ? Scheme::Sweet : Scheme::Kgw;

        CorpusParams cp;
        cp.params = params;
        cp.sampler = MultinomialSampler{1.0};
        cp.tokens = 200;
        cp.entropy_modulus = modulus;
        const std::vector<SequenceRecord> wm = make_corpus(
            *model, cp, n_per_class, absorb64(base_seed, pair.gated ? 0x999 : 0xAAA), true);
        const std::vector<SequenceRecord> human =
            make_corpus(*model, cp, n_per_class, absorb64(base_seed, 0xBBB), false);
        const double s_star = corpus_mean_entropy(wm);

        const Scheme schemes[] = {pair.base, pair.diff};
        const ScoredCorpus zw = score_corpus(wm, params, schemes);
        const ScoredCorpus zh = score_corpus(human, params, schemes);

        double means[2] = {0, 0}, ses[2] = {0, 0};
        for (int si = 0; si < 2; ++si) {
            const Scheme s = schemes[si];
            CellResult cell;
            cell.gamma = gamma;
            cell.delta = delta;
            cell.rho = 0.5;
            cell.scheme = s;
            cell.s_star = s_star;
            const auto& zws = zw.z.at(s);
            const auto& zhs = zh.z.at(s);
            if (zws.empty() || zhs.empty()) {
                cell.note = "degenerate: no scorable records";
                cell.summary.scheme = s;
                cell.summary.degenerate = zw.degenerate.at(s) + zh.degenerate.at(s);
                rep << scheme_name(s) << ": degenerate cell (" << cell.summary.degenerate
                    << " unscorable records)\n";
            } else {
                cell.summary = summarize_scores(zws, zhs, s);
                cell.summary.degenerate = zw.degenerate.at(s) + zh.degenerate.at(s);
                cell.se_z_watermarked = stderr_of(zws);
                means[si] = cell.summary.mean_z_watermarked;
                ses[si] = cell.se_z_watermarked;
                rep << scheme_name(s) << ": mean z = " << fmt(means[si], 4) << " (se "
                    << fmt(ses[si], 4) << "), tpr@1%=" << fmt(cell.summary.tpr_at_fpr1, 4)
                    << ", tpr@5%=" << fmt(cell.summary.tpr_at_fpr5, 4)
                    << ", best f1=" << fmt(cell.summary.best_f1, 4)
                    << ", degenerate=" << cell.summary.degenerate << "\n";
            }
            result.cells.push_back(cell);
        }
        const double ci = 1.96 * std::sqrt(ses[0] * ses[0] + ses[1] * ses[1]);
        result.checks.push_back(
            {std::string(scheme_name(pair.diff)) + " mean z >= " + scheme_name(pair.base) +
                 " mean z - ci",
             means[1] >= means[0] - ci,
             fmt(means[1], 4) + " vs " + fmt(means[0], 4) + " (ci " + fmt(ci, 4) + ")"});
        rep << "\n";
    }

    result.report_text = rep.str();
    assemble_outputs(result, out_dir);
    return result;
}

ExperimentResult experiment_attack_robustness(uint64_t base_seed,
                                              const std::filesystem::path& out_dir,
                                              int n_per_class) {
    ExperimentResult result;
    result.name = "attack_robustness";

    SyntheticModelSpec model_spec;
    model_spec.vocab_size = kDeskVocab;
    model_spec.rng_seed = absorb64(base_seed, 0xCCC);
    const auto model = make_synthetic_model(model_spec);

    const double gamma = 0.5, delta = 1.5;
    WatermarkParams params = desk_params(gamma, delta, PseudoRandomPolarity{0.5});
    CorpusParams cp;
    cp.params = params;
    cp.sampler = MultinomialSampler{0.7};
    cp.tokens = 200;
    cp.entropy_modulus = bound_modulus(gamma, delta);

    const std::vector<SequenceRecord> wm =
        make_corpus(*model, cp, n_per_class, absorb64(base_seed, 0xDDD), true);
    const std::vector<SequenceRecord> human =
        make_corpus(*model, cp, n_per_class, absorb64(base_seed, 0xEEE), false);

    std::ostringstream rep;
    rep << "token-edit attack proxy on a delta=1.5 corpus (each token independently replaced\n"
        << "by a uniform random id), gamma=0.5, multinomial(0.7), n=" << n_per_class << "+"
        << n_per_class << "\n\n";

    const Scheme schemes[] = {Scheme::Kgw, Scheme::BiMarker};
    for (double rate : {0.0, 0.2, 0.5}) {
        std::vector<SequenceRecord> attacked = wm;
        if (rate > 0.0)
            for (size_t i = 0; i < attacked.size(); ++i)
                attacked[i] = perturb_attack(attacked[i], rate, params.vocab_size,
                                             absorb64(absorb64(base_seed, 0xFFF), i));
        const ScoredCorpus zw = score_corpus(attacked, params, schemes);
        const ScoredCorpus zh = score_corpus(human, params, schemes);

        double tpr5[2] = {0, 0}, means[2] = {0, 0};
        for (int si = 0; si < 2; ++si) {
            const Scheme s = schemes[si];
            CellResult cell;
            cell.gamma = gamma;
            cell.delta = delta;
            cell.rho = 0.5;
            cell.scheme = s;
            cell.summary = summarize_scores(zw.z.at(s), zh.z.at(s), s);
            cell.se_z_watermarked = stderr_of(zw.z.at(s));
            cell.note = "edit_rate=" + fmt(rate, 2);
            result.cells.push_back(cell);
            tpr5[si] = cell.summary.tpr_at_fpr5;
            means[si] = cell.summary.mean_z_watermarked;
            rep << "edit_rate=" << fmt(rate, 2) << " " << scheme_name(s)
                << ": mean z = " << fmt(means[si], 3)
                << ", tpr@1%=" << fmt(cell.summary.tpr_at_fpr1, 4)
                << ", tpr@5%=" << fmt(tpr5[si], 4) << "\n";
        }
        if (rate == 0.2) {
            result.checks.push_back({"attacked corpora stay detectable (mean z > 1)",
                                     means[0] > 1.0 && means[1] > 1.0,
                                     "kgw=" + fmt(means[0], 3) + " bimarker=" + fmt(means[1], 3)});
            const double ci =
                1.96 * std::sqrt(2.0 * 0.25 / static_cast<double>(n_per_class)); // tpr half-width
            result.checks.push_back({"tpr@5% bimarker >= kgw - ci under attack",
                                     tpr5[1] >= tpr5[0] - ci,
                                     "bimarker=" + fmt(tpr5[1], 4) + " kgw=" + fmt(tpr5[0], 4)});
        }
        rep << "\n";
    }

    result.report_text = rep.str();
    assemble_outputs(result, out_dir);
    return result;
}

ExperimentResult experiment_z_vs_length(uint64_t base_seed, const std::filesystem::path& out_dir,
                                        int n_sequences) {
    ExperimentResult result;
    result.name = "z_vs_length";

    SyntheticModelSpec model_spec;
    model_spec.vocab_size = kDeskVocab;
    model_spec.rng_seed = absorb64(base_seed, 0x123);
    const auto model = make_synthetic_model(model_spec);

    const double gamma = 0.5, delta = 1.5;
    WatermarkParams params = desk_params(gamma, delta, PseudoRandomPolarity{0.5});
    CorpusParams cp;
    cp.params = params;
    cp.sampler = MultinomialSampler{0.7};
    cp.tokens = 200;
    cp.entropy_modulus = bound_modulus(gamma, delta);
    const std::vector<SequenceRecord> wm =
        make_corpus(*model, cp, n_sequences, absorb64(base_seed, 0x456), true);

    const int checkpoints[] = {25, 50, 100, 150, 200};
    const Scheme schemes[] = {Scheme::Kgw, Scheme::BiMarker};

    // mean z over the corpus at each prefix length
    std::map<Scheme, std::map<int, std::vector<double>>> curves;
    std::vector<std::map<Scheme, std::map<int, double>>> slots(wm.size());
    parallel_for(wm.size(), [&](size_t i) {
        for (Scheme s : schemes) {
            const auto series = z_vs_length(wm[i], params, s);
            for (const auto& [t, z] : series)
                for (int c : checkpoints)
                    if (t == c) slots[i][s][c] = z;
        }
    });
    for (const auto& slot : slots)
        for (const auto& [s, by_t] : slot)
            for (const auto& [t, z] : by_t) curves[s][t].push_back(z);

    std::ostringstream rep, csv;
    rep << "average z over " << n_sequences
        << " watermarked sequences as the scored prefix grows (gamma=0.5, delta=1.5)\n\n";
    csv << "# z_vs_length curve v" << kFormatMajor << "." << kFormatMinor << "\n";
    csv << "T,mean_z_kgw,se_kgw,mean_z_bimarker,se_bimarker\n";
    std::map<Scheme, std::map<int, double>> means, ses;
    for (int t : checkpoints) {
        for (Scheme s : schemes) {
            means[s][t] = mean_of(curves[s][t]);
            ses[s][t] = stderr_of(curves[s][t]);
        }
        csv << t << ',' << fmt(means[Scheme::Kgw][t]) << ',' << fmt(ses[Scheme::Kgw][t]) << ','
            << fmt(means[Scheme::BiMarker][t]) << ',' << fmt(ses[Scheme::BiMarker][t]) << "\n";
        rep << "T=" << t << ": kgw " << fmt(means[Scheme::Kgw][t], 4) << ", bimarker "
            << fmt(means[Scheme::BiMarker][t], 4) << "\n";
    }

    for (Scheme s : schemes)
        result.checks.push_back(
            {std::string(scheme_name(s)) + " mean z at T=200 exceeds T=50",
             means[s][200] > means[s][50],
             fmt(means[s][200], 4) + " vs " + fmt(means[s][50], 4)});
    bool curve_ok = true;
    for (int t : checkpoints) {
        const double ci = 1.96 * std::sqrt(ses[Scheme::Kgw][t] * ses[Scheme::Kgw][t] +
                                           ses[Scheme::BiMarker][t] * ses[Scheme::BiMarker][t]);
        curve_ok = curve_ok && means[Scheme::BiMarker][t] >= means[Scheme::Kgw][t] - ci;
    }
    result.checks.push_back({"bimarker curve >= kgw curve - ci at every checkpoint", curve_ok, ""});

    for (int t : checkpoints)
        for (Scheme s : schemes) {
            CellResult cell;
            cell.gamma = gamma;
            cell.delta = delta;
            cell.rho = 0.5;
            cell.scheme = s;
            cell.summary.scheme = s;
            cell.summary.n_watermarked = wm.size();
            cell.summary.mean_z_watermarked = means[s][t];
            cell.se_z_watermarked = ses[s][t];
            cell.note = "prefix T=" + std::to_string(t);
            result.cells.push_back(cell);
        }

    result.report_text = rep.str();
    assemble_outputs(result, out_dir, "z_vs_length_curve.csv", csv.str());
    return result;
}

ExperimentResult experiment_green_bound_mc(uint64_t base_seed,
                                           const std::filesystem::path& out_dir, int n_vectors,
                                           int n_draws) {
    ExperimentResult result;
    result.name = "green_bound_mc";

    const int kVocab = 50;
    std::vector<std::vector<double>> vectors;
    SeedStream rng(absorb64(base_seed, 0x6A1));
    for (int v = 0; v < n_vectors; ++v) {
        std::vector<double> p(kVocab);
        const double sharp = 0.2 + 5.0 * rng.next_unit();
        double sum = 0.0;
        for (double& x : p) {
            x = std::exp(sharp * (rng.next_unit() - 0.5));
            sum += x;
        }
        for (double& x : p) x /= sum;
        vectors.push_back(std::move(p));
    }

    std::ostringstream rep;
    rep << n_vectors << " random distributions over |V|=" << kVocab << ", " << n_draws
        << " partition draws each; per draw the boosted green mass\n"
        << "alpha*m1/(alpha*m1 + 1 - m1) is the exact conditional green probability, so the\n"
        << "Monte Carlo integrates over the partition only.\n\n";

    bool all_pass = true;
    for (const double gamma : {0.25, 0.5})
        for (const double delta : {1.0, 2.0}) {
            const double alpha = std::exp(delta);
            const PartitionParams params{gamma, kVocab, 1};
            std::vector<double> margins(vectors.size(), 0.0);
            std::vector<uint8_t> ok(vectors.size(), 0);
            parallel_for(vectors.size(), [&](size_t vi) {
                const std::vector<double>& p = vectors[vi];
                SeedStream draw_rng(absorb64(absorb64(base_seed, vi),
                                             static_cast<uint64_t>(gamma * 100 + delta)));
                double acc = 0.0, acc2 = 0.0;
                for (int d = 0; d < n_draws; ++d) {
                    const VocabSplit split = partition_vocab(draw_rng.next_u64(), params);
                    double m1 = 0.0;
                    for (TokenId t : split.list1) m1 += p[static_cast<size_t>(t)];
                    const double mass = alpha * m1 / (alpha * m1 + 1.0 - m1);
                    acc += mass;
                    acc2 += mass * mass;
                }
                const double mean = acc / n_draws;
                const double var = std::max(0.0, acc2 / n_draws - mean * mean);
                const double sigma_hat = std::sqrt(var / n_draws);
                const double bound = green_prob_lower_bound(p, gamma, delta);
                ok[vi] = mean >= bound - 3.0 * sigma_hat ? 1 : 0;
                margins[vi] = sigma_hat > 0.0 ? (mean - bound) / sigma_hat : 1e9;
            });
            size_t below = 0;
            double min_margin = 1e30;
            for (size_t vi = 0; vi < vectors.size(); ++vi) {
                if (!ok[vi]) ++below;
                min_margin = std::min(min_margin, margins[vi]);
            }
            all_pass = all_pass && below == 0;
            rep << "gamma=" << fmt(gamma) << " delta=" << fmt(delta) << ": " << below
                << " below bound-3sigma, min margin " << fmt(min_margin, 2) << " sigma\n";

            CellResult cell;
            cell.gamma = gamma;
            cell.delta = delta;
            cell.scheme = Scheme::Kgw;
            cell.note = "min_margin_sigma=" + fmt(min_margin, 3) +
                        ";violations=" + std::to_string(below);
            result.cells.push_back(cell);
        }
    result.checks.push_back(
        {"sampled green probability >= closed-form bound - 3sigma everywhere", all_pass, ""});

    result.report_text = rep.str();
    assemble_outputs(result, out_dir);
    return result;
}

std::vector<std::string> builtin_experiment_names() {
    return {"null_calibration",  "theorem1_audit",    "theorem2",
            "rho_sweep",         "tpr_fpr_grid",      "low_entropy_suite",
            "attack_robustness", "z_vs_length",       "green_bound_mc"};
}

std::optional<ExperimentResult> run_builtin_experiment(const std::string& name, uint64_t base_seed,
                                                       const std::filesystem::path& out_dir) {
    if (name == "null_calibration") return experiment_null_calibration(base_seed, out_dir);
    if (name == "theorem1_audit") return experiment_theorem1_audit(out_dir);
    if (name == "theorem2") return experiment_theorem2(base_seed, out_dir);
    if (name == "rho_sweep") return experiment_rho_sweep(base_seed, out_dir);
    if (name == "tpr_fpr_grid") return experiment_tpr_fpr_grid(base_seed, out_dir);
    if (name == "low_entropy_suite") return experiment_low_entropy_suite(base_seed, out_dir);
    if (name == "attack_robustness") return experiment_attack_robustness(base_seed, out_dir);
    if (name == "z_vs_length") return experiment_z_vs_length(base_seed, out_dir);
    if (name == "green_bound_mc") return experiment_green_bound_mc(base_seed, out_dir);
    return std::nullopt;
}

} // namespace bimark
