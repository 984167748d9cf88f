#include "simscore/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "simscore/features.hpp"

namespace simscore {

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

ChromaSequence base_walk(const SyntheticSpec& spec, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double innovation = std::sqrt(1.0 - spec.smoothing * spec.smoothing);
    Chroma z{};
    for (double& v : z) {
        v = normal(rng);
    }
    ChromaSequence seq;
    seq.rows.reserve(static_cast<std::size_t>(spec.length));
    for (int t = 0; t < spec.length; ++t) {
        if (t > 0) {
            for (double& v : z) {
                v = spec.smoothing * v + innovation * normal(rng);
            }
        }
        Chroma row{};
        for (std::size_t k = 0; k < kChromaBins; ++k) {
            row[k] = std::exp(z[k]);
        }
        seq.rows.push_back(row);
    }
    return normalize_rows(seq);
}

ChromaSequence warp(const ChromaSequence& seq, double jitter, std::mt19937_64& rng) {
    if (jitter <= 0.0) {
        return seq;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ChromaSequence out;
    out.rows.reserve(seq.size() + seq.size() / 4);
    for (const Chroma& row : seq.rows) {
        const double u = unit(rng);
        if (u < 0.5 * jitter) {
            continue;
        }
        out.rows.push_back(row);
        if (u >= 1.0 - 0.5 * jitter) {
            out.rows.push_back(row);
        }
    }
    if (out.empty()) {
        out.rows.push_back(seq[0]);
    }
    return out;
}

ChromaSequence perturb(const ChromaSequence& seq, double sigma, std::mt19937_64& rng) {
    if (sigma <= 0.0) {
        return seq;
    }
    std::normal_distribution<double> normal(0.0, sigma);
    ChromaSequence out = seq;
    for (Chroma& row : out.rows) {
        for (double& v : row) {
            v = std::max(0.0, v + normal(rng));
        }
    }
    return normalize_rows(out);
}

}  // namespace

void validate(const SyntheticSpec& spec) {
    if (spec.cover_sets <= 0 || spec.covers_per_set <= 0 || spec.length <= 0) {
        throw Error("synthetic sizes must be positive");
    }
    if (spec.transposition < 0) {
        throw Error("transposition range must be non-negative");
    }
    if (!(spec.jitter >= 0.0 && spec.jitter <= 0.5)) {
        throw Error("jitter must be in [0, 0.5]");
    }
    if (!(spec.noise >= 0.0)) {
        throw Error("noise must be non-negative");
    }
    if (!(spec.smoothing >= 0.0 && spec.smoothing < 1.0)) {
        throw Error("smoothing must be in [0, 1)");
    }
}

std::vector<TrackRecord> generate_synthetic_tracks(const SyntheticSpec& spec) {
    validate(spec);
    std::vector<TrackRecord> out;
    out.reserve(static_cast<std::size_t>(spec.cover_sets * spec.covers_per_set));
    for (int s = 0; s < spec.cover_sets; ++s) {
        std::mt19937_64 base_rng(mix(spec.seed, static_cast<std::uint64_t>(s)));
        const ChromaSequence base = base_walk(spec, base_rng);
        char set_name[32];
        std::snprintf(set_name, sizeof set_name, "set%02d", s);
        for (int m = 0; m < spec.covers_per_set; ++m) {
            std::mt19937_64 rng(mix(mix(spec.seed, static_cast<std::uint64_t>(s)), static_cast<std::uint64_t>(m) + 1));
            std::uniform_int_distribution<int> shift(-spec.transposition, spec.transposition);
            ChromaSequence seq = transpose(base, shift(rng));
            seq = warp(seq, spec.jitter, rng);
            seq = perturb(seq, spec.noise, rng);
            out.push_back({std::string(set_name) + "_" + std::to_string(m), set_name, std::move(seq)});
        }
    }
    return out;
}

TrackStore generate_synthetic(const SyntheticSpec& spec, std::optional<Codebook> codebook) {
    return build_store(generate_synthetic_tracks(spec), std::move(codebook));
}

}  // namespace simscore
