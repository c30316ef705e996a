// bimark: bipolar-watermark toolkit CLI.
//   bimark generate --config cfg.json -n 500 --out corpus.jsonl
//   bimark detect   --config cfg.json --scheme bimarker --in corpus.jsonl --out scores.jsonl
//   bimark simulate <name|spec.json> --out-dir results/

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bimark/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"bipolar-watermark toolkit"};
    app.require_subcommand(1);

    bimark::CliOverrides ov;
    std::string config_path;
    std::string out_path;

    auto add_shared = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file")->required();
        cmd->add_option("--gamma", [&](const CLI::results_t& r) {
            ov.gamma = std::stod(r[0]);
            return true;
        }, "list1 fraction in (0,1)");
        cmd->add_option("--delta", [&](const CLI::results_t& r) {
            ov.delta = std::stod(r[0]);
            return true;
        }, "logit bias");
        cmd->add_option("--rho", [&](const CLI::results_t& r) {
            ov.rho = std::stod(r[0]);
            return true;
        }, "positive-polarity probability");
        cmd->add_option("--policy", [&](const CLI::results_t& r) {
            ov.policy = r[0];
            return true;
        }, "pseudo_random | position_cycle | hard_split");
        cmd->add_option("--key-hex", [&](const CLI::results_t& r) {
            ov.key_hex = r[0];
            return true;
        }, "watermark key as hex (BIMARK_KEY_HEX also works)");
        cmd->add_option("--scheme", [&](const CLI::results_t& r) {
            ov.scheme = r[0];
            return true;
        }, "kgw | bimarker | sweet | sweet-bi | ewd | ewd-bi");
        cmd->add_option("--threshold", [&](const CLI::results_t& r) {
            ov.threshold = std::stod(r[0]);
            return true;
        }, "z verdict threshold");
        cmd->add_option("--seed", [&](const CLI::results_t& r) {
            ov.seed = std::stoull(r[0]);
            return true;
        }, "base seed");
        cmd->add_option("--tokens", [&](const CLI::results_t& r) {
            ov.tokens = std::stoi(r[0]);
            return true;
        }, "tokens per sequence");
    };

    // generate
    auto* gen = app.add_subcommand("generate", "write a watermarked (or delta=0 control) corpus");
    int n = 500;
    bool jitter = false;
    add_shared(gen);
    gen->add_option("-n,--num", n, "number of sequences");
    gen->add_option("--out", out_path, "output corpus path (JSONL)")->required();
    gen->add_flag("--jitter", jitter, "draw each length uniformly from [T-5, T+5]");

    // detect
    auto* det = app.add_subcommand("detect", "score a corpus and summarize");
    std::string in_path;
    add_shared(det);
    det->add_option("--in", in_path, "input corpus path (JSONL)")->required();
    det->add_option("--out", out_path, "output scores path (JSONL)")->required();

    // simulate
    auto* sim = app.add_subcommand("simulate", "run a named or spec-file experiment");
    std::string experiment;
    std::string out_dir = "results";
    std::optional<uint64_t> sim_seed;
    sim->add_option("experiment", experiment, "built-in name or spec file")->required();
    sim->add_option("--out-dir", out_dir, "directory for result artifacts");
    sim->add_option("--seed", [&](const CLI::results_t& r) {
        sim_seed = std::stoull(r[0]);
        return true;
    }, "base seed override");

    CLI11_PARSE(app, argc, argv);

    std::string err;
    int rc = 0;
    if (gen->parsed()) rc = bimark::cmd_generate(config_path, ov, n, out_path, jitter, err);
    else if (det->parsed()) rc = bimark::cmd_detect(config_path, ov, in_path, out_path, err);
    else if (sim->parsed()) rc = bimark::cmd_simulate(experiment, sim_seed, out_dir, err);
    if (!err.empty()) std::cerr << "error: " << err << "\n";
    return rc;
}
