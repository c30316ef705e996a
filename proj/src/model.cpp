#include "bimark/model.hpp"

#include <algorithm>

#include "bimark/errors.hpp"
#include "bimark/prng.hpp"

namespace bimark {

void SyntheticModelSpec::validate() const {
    if (vocab_size < 2) raise(Errc::ConfigError, "model.vocab_size: must be at least 2");
    if (const auto* p = std::get_if<PeakedProfile>(&profile)) {
        if (!(p->concentration > 0.0))
            raise(Errc::ConfigError, "model.concentration: must be positive");
    } else if (const auto* m = std::get_if<MixedProfile>(&profile)) {
        if (!(m->concentration > 0.0))
            raise(Errc::ConfigError, "model.concentration: must be positive");
        if (!(m->low_entropy_fraction >= 0.0 && m->low_entropy_fraction <= 1.0))
            raise(Errc::ConfigError, "model.low_entropy_fraction: must lie in [0,1]");
    }
}

std::string profile_name(const EntropyProfile& profile) {
    struct Visitor {
        std::string operator()(const UniformProfile&) const { return "uniform"; }
        std::string operator()(const PeakedProfile& p) const {
            return "peaked(c=" + std::to_string(p.concentration) + ")";
        }
        std::string operator()(const MixedProfile& m) const {
            return "mixed(f=" + std::to_string(m.low_entropy_fraction) +
                   ",c=" + std::to_string(m.concentration) + ")";
        }
    };
    return std::visit(Visitor{}, profile);
}

namespace {

class SyntheticModel final : public Model {
public:
    explicit SyntheticModel(SyntheticModelSpec spec) : spec_(spec) { spec_.validate(); }

    int vocab_size() const noexcept override { return spec_.vocab_size; }

    void next_logits(std::span<const TokenId> context, std::span<double> out) const override {
        if (out.size() != static_cast<size_t>(spec_.vocab_size))
            raise(Errc::ShapeError, "logit buffer size mismatch");
        std::fill(out.begin(), out.end(), 0.0);

        struct Visitor {
            const SyntheticModel& model;
            std::span<const TokenId> context;
            std::span<double> out;

            void operator()(const UniformProfile&) const {}
            void operator()(const PeakedProfile& p) const {
                model.put_peak(context, p.concentration, out);
            }
            void operator()(const MixedProfile& m) const {
                SeedStream stream(model.position_fingerprint(context));
                if (stream.next_unit() < m.low_entropy_fraction)
                    model.put_peak(context, m.concentration, out);
            }
        };
        std::visit(Visitor{*this, context, out}, spec_.profile);
    }

private:
    uint64_t position_fingerprint(std::span<const TokenId> context) const {
        uint64_t state = absorb64(spec_.rng_seed, static_cast<uint64_t>(context.size()));
        const uint64_t last =
            context.empty() ? ~uint64_t{0}
                            : static_cast<uint64_t>(static_cast<uint32_t>(context.back()));
        return absorb64(state, last);
    }

    void put_peak(std::span<const TokenId> context, double concentration,
                  std::span<double> out) const {
        const uint64_t fp = position_fingerprint(context);
        const auto top = static_cast<size_t>(mix64(fp ^ kAbsorbMul) %
                                             static_cast<uint64_t>(spec_.vocab_size));
        out[top] = concentration;
    }

    SyntheticModelSpec spec_;
};

} // namespace

std::unique_ptr<Model> make_synthetic_model(const SyntheticModelSpec& spec) {
    return std::make_unique<SyntheticModel>(spec);
}

} // namespace bimark
