#pragma once

// The `generate` / `detect` / `simulate` commands as library functions so the
// test suite can drive them directly. Exit codes: 0 success, 1 usage/config
// error, 2 completed with partial scoring failures.

#include <filesystem>
#include <optional>
#include <string>

#include "bimark/io.hpp"

namespace bimark {

/// Flag-level overrides applied on top of the config file.
struct CliOverrides {
    std::optional<double> gamma;
    std::optional<double> delta;
    std::optional<double> rho;       // re-parameterizes the configured policy
    std::optional<std::string> policy; // pseudo_random | position_cycle | hard_split
    std::optional<std::string> key_hex;
    std::optional<std::string> scheme;
    std::optional<double> threshold;
    std::optional<uint64_t> seed;
    std::optional<int> tokens;
};

RunConfig apply_overrides(RunConfig cfg, const CliOverrides& ov);

int cmd_generate(const std::filesystem::path& config_path, const CliOverrides& ov, int n,
                 const std::filesystem::path& out_path, bool length_jitter, std::string& err);

int cmd_detect(const std::filesystem::path& config_path, const CliOverrides& ov,
               const std::filesystem::path& in_path, const std::filesystem::path& out_path,
               std::string& err);

int cmd_simulate(const std::string& name_or_spec_file, std::optional<uint64_t> base_seed,
                 const std::filesystem::path& out_dir, std::string& err);

} // namespace bimark
