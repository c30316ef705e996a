#include "bimark/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bimark {

using nlohmann::json;

namespace {

json version_header(const char* format) {
    return json{{"format", format},
                {"version", std::to_string(kFormatMajor) + "." + std::to_string(kFormatMinor)}};
}

void check_version(const json& header, const char* format) {
    if (!header.contains("format") || header.at("format") != format)
        raise(Errc::FormatError, std::string("expected a '") + format + "' header line");
    const std::string v = header.at("version").get<std::string>();
    const auto dot = v.find('.');
    const int major = std::stoi(v.substr(0, dot));
    if (major != kFormatMajor)
        raise(Errc::FormatError, "unsupported major format version " + v);
}

json record_to_json(const SequenceRecord& rec) {
    json j;
    j["id"] = rec.id;
    j["tokens"] = rec.tokens;
    if (rec.entropies) j["entropies"] = *rec.entropies;
    j["label"] = label_name(rec.label);
    if (rec.prompt) j["prompt"] = *rec.prompt;
    return j;
}

SequenceRecord record_from_json(const json& j) {
    SequenceRecord rec;
    rec.id = j.value("id", "");
    rec.tokens = j.at("tokens").get<std::vector<TokenId>>();
    if (j.contains("entropies") && !j.at("entropies").is_null())
        rec.entropies = j.at("entropies").get<std::vector<double>>();
    if (j.contains("prompt") && !j.at("prompt").is_null())
        rec.prompt = j.at("prompt").get<std::vector<TokenId>>();
    const std::string label = j.value("label", "unknown");
    const auto parsed = label_from_name(label);
    if (!parsed) raise(Errc::FormatError, "unknown label '" + label + "'");
    rec.label = *parsed;
    return rec;
}

} // namespace

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(Errc::IoError, "cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) raise(Errc::IoError, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) raise(Errc::IoError, "rename to " + path.string() + " failed: " + ec.message());
}

void write_corpus(const std::filesystem::path& path, const std::vector<SequenceRecord>& records) {
    std::ostringstream out;
    out << version_header("corpus").dump() << "\n";
    for (const SequenceRecord& rec : records) out << record_to_json(rec).dump() << "\n";
    write_text_atomic(path, out.str());
}

CorpusReadResult read_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.empty())
        raise(Errc::EmptyCorpus, path.string() + " is empty");

    json header;
    try {
        header = json::parse(line);
    } catch (const json::exception& e) {
        raise(Errc::FormatError, std::string("bad header line: ") + e.what());
    }
    check_version(header, "corpus");

    CorpusReadResult result;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            result.records.push_back(record_from_json(json::parse(line)));
        } catch (const std::exception& e) {
            result.line_errors.push_back("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return result;
}

SequenceRecord trace_to_record(const GenerationTrace& trace, std::string id, Label label) {
    SequenceRecord rec;
    rec.id = std::move(id);
    rec.tokens = trace.tokens;
    rec.entropies = trace.entropies;
    rec.prompt = trace.prompt;
    rec.label = label;
    return rec;
}

namespace {

PolarityPolicy policy_from_json(const json& j) {
    const std::string type = j.value("type", "pseudo_random");
    if (type == "pseudo_random") return PseudoRandomPolarity{j.value("rho", 0.5)};
    if (type == "position_cycle")
        return PositionCyclePolarity{j.value("k_pos", 20), j.value("k_neg", 20)};
    if (type == "hard_split")
        return HardSplitPolarity{j.value("rho", 0.5), j.value("total_tokens", 200)};
    raise(Errc::ConfigError, "policy.type: unknown policy '" + type + "'");
}

Sampler sampler_from_json(const json& j) {
    const std::string type = j.value("type", "multinomial");
    if (type == "greedy") return GreedySampler{};
    if (type == "multinomial") return MultinomialSampler{j.value("temperature", 0.7)};
    raise(Errc::ConfigError, "sampler.type: unknown sampler '" + type + "'");
}

EntropyProfile profile_from_json(const json& j) {
    const std::string type = j.value("profile", "uniform");
    if (type == "uniform") return UniformProfile{};
    if (type == "peaked") return PeakedProfile{j.value("concentration", 10.0)};
    if (type == "mixed")
        return MixedProfile{j.value("low_entropy_fraction", 0.5), j.value("concentration", 10.0)};
    raise(Errc::ConfigError, "model.profile: unknown profile '" + type + "'");
}

} // namespace

std::string env_key_override() {
    const char* v = std::getenv("BIMARK_KEY_HEX");
    return v ? std::string(v) : std::string();
}

RunConfig load_config(const std::filesystem::path& path, const std::string& env_key_hex) {
    std::ifstream in(path);
    if (!in) raise(Errc::ConfigError, "cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        raise(Errc::ConfigError, std::string("config parse failure: ") + e.what());
    }

    RunConfig cfg;
    try {
        cfg.params.gamma = j.value("gamma", 0.5);
        cfg.params.delta = j.value("delta", 2.0);
        cfg.params.context_width = j.value("context_width", 1);
        cfg.params.vocab_size = j.value("vocab_size", 1024);
        cfg.params.threshold = j.value("threshold", 4.0);
        cfg.params.tau = j.value("tau", 0.695);
        const std::string scheme = j.value("scheme", "bimarker");
        const auto parsed = scheme_from_name(scheme);
        if (!parsed) raise(Errc::ConfigError, "scheme: unknown scheme '" + scheme + "'");
        cfg.params.scheme = *parsed;
        if (j.contains("policy")) cfg.params.policy = policy_from_json(j.at("policy"));
        if (j.contains("sampler")) cfg.sampler = sampler_from_json(j.at("sampler"));

        const std::string key_hex =
            !env_key_hex.empty() ? env_key_hex : j.value("key_hex", std::string());
        if (key_hex.empty())
            raise(Errc::ConfigError, "key_hex: missing (set it in the config or BIMARK_KEY_HEX)");
        cfg.params.key = WatermarkKey::from_hex(key_hex);

        cfg.tokens = j.value("tokens", 200);
        cfg.length_jitter = j.value("length_jitter", false);
        cfg.seed = j.value("seed", uint64_t{1});
        if (j.contains("entropy_modulus") && !j.at("entropy_modulus").is_null())
            cfg.entropy_modulus = j.at("entropy_modulus").get<double>();

        cfg.model.vocab_size = cfg.params.vocab_size;
        if (j.contains("model")) {
            const json& m = j.at("model");
            cfg.model.vocab_size = m.value("vocab_size", cfg.params.vocab_size);
            cfg.model.profile = profile_from_json(m);
            cfg.model.rng_seed = m.value("seed", uint64_t{7});
        }
    } catch (const json::exception& e) {
        raise(Errc::ConfigError, std::string("config field error: ") + e.what());
    }

    cfg.params.validate();
    cfg.model.validate();
    if (cfg.tokens < 0) raise(Errc::ConfigError, "tokens: must be nonnegative");
    return cfg;
}

} // namespace bimark
