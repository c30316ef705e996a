#pragma once

// On-disk formats. Corpora are JSONL: a version header line followed by one
// record object per line. Summaries are CSV with a version comment line.
// Writers go through a temp-file + rename so readers never observe partial
// output.

#include <filesystem>
#include <string>
#include <vector>

#include "bimark/detect.hpp"
#include "bimark/generate.hpp"
#include "bimark/model.hpp"

namespace bimark {

inline constexpr int kFormatMajor = 1;
inline constexpr int kFormatMinor = 0;

/// {"format":"corpus","version":"1.0"} header + one record per line.
void write_corpus(const std::filesystem::path& path, const std::vector<SequenceRecord>& records);

struct CorpusReadResult {
    std::vector<SequenceRecord> records;
    std::vector<std::string> line_errors; // "line N: why", malformed lines are skipped
};

/// Rejects files whose header major version is unknown (FormatError) and
/// empty files (EmptyCorpus). Malformed record lines are reported with their
/// line number and skipped.
CorpusReadResult read_corpus(const std::filesystem::path& path);

SequenceRecord trace_to_record(const GenerationTrace& trace, std::string id, Label label);

/// Atomic text write (temp file + rename).
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

/// Full run configuration parsed from a JSON config file plus overrides.
struct RunConfig {
    WatermarkParams params;
    Sampler sampler = MultinomialSampler{0.7};
    SyntheticModelSpec model;
    int tokens = 200;
    bool length_jitter = false; // uniform in [tokens-5, tokens+5]
    uint64_t seed = 1;
    std::optional<double> entropy_modulus;
};

/// Parses a config file; env_key_hex (when nonempty) overrides the file's
/// key material, mirroring the BIMARK_KEY_HEX environment override.
RunConfig load_config(const std::filesystem::path& path, const std::string& env_key_hex = {});

/// The key override read from the environment (empty when unset).
std::string env_key_override();

} // namespace bimark
