#include "simscore/measures.hpp"

#include <cmath>
#include <random>

#include "simscore/features.hpp"
#include "simscore/parallel.hpp"
#include "simscore/retrieval.hpp"

namespace simscore {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

const SymbolString& require_symbols(const Track& t) {
    if (t.symbols().empty()) {
        throw Error("measure requires symbol strings; no codebook loaded");
    }
    return t.symbols();
}

class SymbolMeasure : public Measure {
  public:
    bool needs_symbols() const override { return true; }

    double distance(const TrackStore& store, std::size_t query, std::size_t candidate,
                    int shift) const override {
        const SymbolString& x = require_symbols(store[query]);
        require_symbols(store[candidate]);
        const SymbolString& y = store[candidate].rotated_symbols[static_cast<std::size_t>(shift)];
        return symbols_distance(x, y);
    }

  protected:
    virtual double symbols_distance(const SymbolString& x, const SymbolString& y) const = 0;
};

class CompressionMeasure final : public SymbolMeasure {
  public:
    CompressionMeasure(bool aligned, const MeasureConfig& cfg)
        : aligned_(aligned), code_length_(make_code_length(cfg.compressor, cfg.compressor_options)) {}

    std::string_view name() const override { return aligned_ ? "ncda" : "ncd"; }

  private:
    double symbols_distance(const SymbolString& x, const SymbolString& y) const override {
        return aligned_ ? ncda(code_length_, x, y) : ncd(code_length_, x, y);
    }

    bool aligned_;
    CodeLengthFn code_length_;
};

class PredictionMeasure final : public SymbolMeasure {
  public:
    enum class Kind { Ncd, Ncda, Cross };

    PredictionMeasure(Kind kind, PredictorSpec spec) : kind_(kind), spec_(spec) {}

    std::string_view name() const override {
        switch (kind_) {
            case Kind::Ncd:
                return "ncd_pred";
            case Kind::Ncda:
                return "ncda_pred";
            case Kind::Cross:
                return "dcross";
        }
        return "";
    }

  private:
    double symbols_distance(const SymbolString& x, const SymbolString& y) const override {
        switch (kind_) {
            case Kind::Ncd:
                return ncd_pred(spec_, x, y);
            case Kind::Ncda:
                return ncda_pred(spec_, x, y);
            case Kind::Cross:
                return d_cross_discrete(spec_, x, y);
        }
        return 0.0;
    }

    Kind kind_;
    PredictorSpec spec_;
};

class JsdMeasure final : public Measure {
  public:
    std::string_view name() const override { return "jsd"; }
    bool needs_symbols() const override { return true; }

    double distance(const TrackStore& store, std::size_t query, std::size_t candidate,
                    int shift) const override {
        require_symbols(store[query]);
        require_symbols(store[candidate]);
        return jsd(store[query].rotation_histograms[0],
                   store[candidate].rotation_histograms[static_cast<std::size_t>(shift)]);
    }
};

class L1Measure final : public Measure {
  public:
    std::string_view name() const override { return "l1"; }
    bool needs_symbols() const override { return true; }

    double distance(const TrackStore& store, std::size_t query, std::size_t candidate,
                    int /*shift*/) const override {
        require_symbols(store[query]);
        require_symbols(store[candidate]);
        return rotation_l1(store[query], store[candidate]);
    }
};

class ContinuousMeasure final : public Measure {
  public:
    enum class Kind { Nid, Cross, Nmse };

    ContinuousMeasure(Kind kind, EmbeddingConfig cfg) : kind_(kind), cfg_(cfg) { validate(cfg_); }

    std::string_view name() const override {
        switch (kind_) {
            case Kind::Nid:
                return "nid";
            case Kind::Cross:
                return "dcross_cont";
            case Kind::Nmse:
                return "nmse";
        }
        return "";
    }

    // Self-prediction entropy is invariant under transposition (the shift
    // permutes every embedded vector the same way), so it is cached per track.
    void prepare(const TrackStore& store, int jobs) override {
        if (kind_ == Kind::Nmse) {
            return;
        }
        self_.assign(store.size(), 0.0);
        parallel_for(store.size(), jobs,
                     [&](std::size_t i) { self_[i] = self_entropy(store[i].chroma, cfg_).bits; });
    }

    double distance(const TrackStore& store, std::size_t query, std::size_t candidate,
                    int shift) const override {
        const ChromaSequence& x = store[query].chroma;
        const ChromaSequence y = transpose(store[candidate].chroma, shift);
        if (kind_ == Kind::Nmse) {
            return nmse_cross(x, y, cfg_);
        }
        const double hx = self_.empty() ? self_entropy(x, cfg_).bits : self_[query];
        const double hy = self_.empty() ? self_entropy(y, cfg_).bits : self_[candidate];
        return kind_ == Kind::Nid ? nid_continuous(x, y, cfg_, hx, hy) : d_cross_continuous(x, y, cfg_, hx, hy);
    }

  private:
    Kind kind_;
    EmbeddingConfig cfg_;
    std::vector<double> self_;
};

class CrossCorrelationMeasure final : public Measure {
  public:
    std::string_view name() const override { return "xcorr_simple"; }

    // The baseline searches all transpositions itself.
    double distance(const TrackStore& store, std::size_t query, std::size_t candidate,
                    int /*shift*/) const override {
        return crosscorr_baseline(store[query].chroma, store[candidate].chroma);
    }
};

class RandomMeasure final : public Measure {
  public:
    explicit RandomMeasure(std::uint64_t seed) : seed_(seed) {}

    std::string_view name() const override { return "random"; }

    double distance(const TrackStore& /*store*/, std::size_t query, std::size_t candidate,
                    int /*shift*/) const override {
        return random_distance(seed_, query, candidate);
    }

  private:
    std::uint64_t seed_;
};

}  // namespace

const std::vector<std::string>& measure_ids() {
    static const std::vector<std::string> ids = {"ncd",  "ncda", "ncd_pred",    "ncda_pred",    "dcross", "jsd",
                                                 "nid",  "dcross_cont", "nmse", "xcorr_simple", "l1",     "random"};
    return ids;
}

std::unique_ptr<Measure> make_measure(const MeasureConfig& config) {
    const std::string& id = config.id;
    if (id == "ncd" || id == "ncda") {
        return std::make_unique<CompressionMeasure>(id == "ncda", config);
    }
    if (id == "ncd_pred") {
        return std::make_unique<PredictionMeasure>(PredictionMeasure::Kind::Ncd, config.predictor);
    }
    if (id == "ncda_pred") {
        return std::make_unique<PredictionMeasure>(PredictionMeasure::Kind::Ncda, config.predictor);
    }
    if (id == "dcross") {
        return std::make_unique<PredictionMeasure>(PredictionMeasure::Kind::Cross, config.predictor);
    }
    if (id == "jsd") {
        return std::make_unique<JsdMeasure>();
    }
    if (id == "l1") {
        return std::make_unique<L1Measure>();
    }
    if (id == "nid") {
        return std::make_unique<ContinuousMeasure>(ContinuousMeasure::Kind::Nid, config.embedding);
    }
    if (id == "dcross_cont") {
        return std::make_unique<ContinuousMeasure>(ContinuousMeasure::Kind::Cross, config.embedding);
    }
    if (id == "nmse") {
        return std::make_unique<ContinuousMeasure>(ContinuousMeasure::Kind::Nmse, config.embedding);
    }
    if (id == "xcorr_simple" || id == "xcorr") {
        return std::make_unique<CrossCorrelationMeasure>();
    }
    if (id == "random") {
        return std::make_unique<RandomMeasure>(config.seed);
    }
    throw Error("measure unavailable: " + id);
}

double random_distance(std::uint64_t seed, std::size_t query, std::size_t candidate) {
    const std::uint64_t key = splitmix64(splitmix64(seed) ^ splitmix64((static_cast<std::uint64_t>(query) << 32) ^
                                                                       static_cast<std::uint64_t>(candidate)));
    std::mt19937_64 rng(key);
    std::normal_distribution<double> normal(0.0, 1.0);
    return normal(rng);
}

double rotation_l1(const Track& query, const Track& candidate) {
    const auto& target = candidate.rotation_histograms[0].weights;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& h : query.rotation_histograms) {
        if (h.size() != target.size()) {
            throw Error("histogram size mismatch");
        }
        double d = 0.0;
        for (std::size_t k = 0; k < target.size(); ++k) {
            d += std::abs(h.weights[k] - target[k]);
        }
        best = std::min(best, d);
    }
    return best;
}

}  // namespace simscore
