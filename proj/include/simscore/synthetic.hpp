#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "simscore/track_store.hpp"

namespace simscore {

struct SyntheticSpec {
    int cover_sets = 10;
    int covers_per_set = 3;
    int length = 200;         // beats in each base sequence
    int transposition = 5;    // covers are shifted by a uniform integer in [-t, t]
    double jitter = 0.1;      // fraction of beats deleted or duplicated, in [0, 0.5]
    double noise = 0.05;      // std of additive Gaussian noise before renormalising
    double smoothing = 0.9;   // AR(1) coefficient of the latent walk, in [0, 1)
    std::uint64_t seed = 0;
};

void validate(const SyntheticSpec& spec);

/// Every cover set has one base sequence, a smoothed random walk mapped to
/// positive unit-norm chroma rows. Each member of the set is the base,
/// rotated in pitch, warped by random beat deletions and duplications, then
/// perturbed by clipped Gaussian noise and renormalised. Ids are
/// "set<NN>_<member>", cover sets "set<NN>".
std::vector<TrackRecord> generate_synthetic_tracks(const SyntheticSpec& spec);

TrackStore generate_synthetic(const SyntheticSpec& spec, std::optional<Codebook> codebook = std::nullopt);

}  // namespace simscore
