#pragma once

// Scripted Monte Carlo experiments. Every run is fully determined by its
// spec and base seed: per-cell seeds derive from the base seed and the cell
// coordinates, sequences derive from the cell seed and their index, and all
// emitted files are byte-stable across reruns.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bimark/bounds.hpp"
#include "bimark/detect.hpp"
#include "bimark/generate.hpp"
#include "bimark/io.hpp"
#include "bimark/model.hpp"

namespace bimark {

enum class PolicyKind : uint8_t { PseudoRandom, HardSplit, PositionCycle };

struct ExperimentSpec {
    std::string name = "custom";
    SyntheticModelSpec model;
    std::vector<double> gammas = {0.5};
    std::vector<double> deltas = {2.0};
    std::vector<double> rhos = {};           // empty: rho defaults to 1-gamma per cell
    std::vector<Scheme> schemes = {Scheme::Kgw, Scheme::BiMarker};
    PolicyKind policy_kind = PolicyKind::PseudoRandom;
    int cycle_pos = 20;
    int cycle_neg = 20;
    int n_watermarked = 500;
    int n_human = 500;
    int tokens = 200;
    Sampler sampler = MultinomialSampler{0.7};
    double edit_rate = 0.0;                  // >0: token-edit attack before detection
    uint64_t base_seed = 2026;
    std::string key_hex = "a1b2c3d4e5f60718293a4b5c6d7e8f90";

    void validate() const;
};

/// Parses an ExperimentSpec from a JSON file (see README for the schema).
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

struct CellResult {
    double gamma = 0.5;
    double delta = 2.0;
    double rho = 0.5;
    Scheme scheme = Scheme::Kgw;
    CorpusSummary summary;
    double se_z_watermarked = 0.0; // standard error of the watermarked mean z
    double s_star = 0.0;           // measured average spike entropy (watermarked corpus)
    double bound_unipolar = 0.0;   // z lower bound at the measured S*
    double bound_diff = 0.0;
    std::string note;              // e.g. "degenerate: all weights zero"
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExperimentResult {
    std::string name;
    std::vector<CellResult> cells;
    std::vector<CheckResult> checks;
    std::string cells_csv;
    std::string report_text;
    std::vector<std::filesystem::path> files_written;

    bool all_checks_pass() const;
};

/// Generic grid runner: for every (gamma, delta, rho) cell, generate a
/// watermarked and a human corpus, optionally apply the token-edit attack,
/// then evaluate each scheme. Writes <name>_cells.csv and <name>_report.txt
/// under out_dir (pass an empty path to skip writing).
ExperimentResult run_experiment(const ExperimentSpec& spec, const std::filesystem::path& out_dir);

// Named built-in experiments (the `simulate` subcommand accepts these names).
ExperimentResult experiment_null_calibration(uint64_t base_seed,
                                             const std::filesystem::path& out_dir,
                                             int n_sequences = 10000);
ExperimentResult experiment_theorem1_audit(const std::filesystem::path& out_dir);
ExperimentResult experiment_theorem2(uint64_t base_seed, const std::filesystem::path& out_dir,
                                     int n_sequences = 10000);
ExperimentResult experiment_rho_sweep(uint64_t base_seed, const std::filesystem::path& out_dir,
                                      int n_per_cell = 300);
ExperimentResult experiment_tpr_fpr_grid(uint64_t base_seed, const std::filesystem::path& out_dir,
                                         int n_per_class = 500);
ExperimentResult experiment_low_entropy_suite(uint64_t base_seed,
                                              const std::filesystem::path& out_dir,
                                              int n_per_class = 300);
ExperimentResult experiment_attack_robustness(uint64_t base_seed,
                                              const std::filesystem::path& out_dir,
                                              int n_per_class = 300);
ExperimentResult experiment_z_vs_length(uint64_t base_seed, const std::filesystem::path& out_dir,
                                        int n_sequences = 100);
/// Monte Carlo audit of the green-sampling probability bound: random
/// distributions over a small vocabulary, many partition draws each, checked
/// against the closed form at three estimated standard errors.
ExperimentResult experiment_green_bound_mc(uint64_t base_seed,
                                           const std::filesystem::path& out_dir,
                                           int n_vectors = 100, int n_draws = 2000);

std::vector<std::string> builtin_experiment_names();
/// Dispatch by built-in name; nullopt for an unknown name.
std::optional<ExperimentResult> run_builtin_experiment(const std::string& name, uint64_t base_seed,
                                                       const std::filesystem::path& out_dir);

/// Closed-form dominance audit over the default grid (or a caller-supplied
/// one): tabulates both bounds, their gap, violations, and exact ties.
struct BoundAudit {
    std::vector<Theorem1Row> rows;
    size_t violations = 0;
    size_t ties = 0;
    std::string csv;
};
BoundAudit run_bound_audit(std::span<const BoundInputs> grid);

// Corpus helpers shared by the experiments and the acceptance suite.

struct CorpusParams {
    WatermarkParams params;
    Sampler sampler = MultinomialSampler{0.7};
    int tokens = 200;
    int prompt_len = 4;
    std::optional<double> entropy_modulus;
};

/// n watermarked (or delta=0 control) sequences; sequence i derives its
/// prompt and sampler seed from absorb64(corpus_seed, i).
std::vector<SequenceRecord> make_corpus(const Model& model, const CorpusParams& cp, int n,
                                        uint64_t corpus_seed, bool watermarked);

/// One classification pass per record, reused across schemes. Unscorable
/// records are dropped per scheme and counted.
struct ScoredCorpus {
    std::map<Scheme, std::vector<double>> z;
    std::map<Scheme, size_t> degenerate;
};
ScoredCorpus score_corpus(const std::vector<SequenceRecord>& records,
                          const WatermarkParams& params, std::span<const Scheme> schemes);

double mean_of(std::span<const double> xs);
double variance_of(std::span<const double> xs); // unbiased
double stderr_of(std::span<const double> xs);

} // namespace bimark
