#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "simscore/compress_distance.hpp"
#include "simscore/predict_continuous.hpp"
#include "simscore/predict_discrete.hpp"
#include "simscore/track_store.hpp"

namespace simscore {

struct MeasureConfig {
    std::string id = "dcross_cont";
    CompressorId compressor = CompressorId::SeqDict;
    CompressorOptions compressor_options;
    PredictorSpec predictor;
    EmbeddingConfig embedding{4, 1, 1, 8};
    std::uint64_t seed = 0;
};

/// A pairwise distance between a query and a candidate that has already been
/// transposed by `shift` semitones (the OTI of the pair).
class Measure {
  public:
    virtual ~Measure() = default;

    virtual std::string_view name() const = 0;
    virtual bool needs_symbols() const { return false; }

    /// Per-track precomputation (e.g. self-prediction entropies).
    virtual void prepare(const TrackStore& /*store*/, int /*jobs*/) {}

    virtual double distance(const TrackStore& store, std::size_t query, std::size_t candidate,
                            int shift) const = 0;
};

/// Known ids: ncd, ncda, ncd_pred, ncda_pred, dcross, jsd, nid, dcross_cont,
/// nmse, xcorr_simple, l1, random. Throws "measure unavailable" otherwise.
std::unique_ptr<Measure> make_measure(const MeasureConfig& config);

const std::vector<std::string>& measure_ids();

/// Standard normal draw determined by (seed, query, candidate) alone.
double random_distance(std::uint64_t seed, std::size_t query, std::size_t candidate);

/// Smallest L1 distance between any of the query's rotation histograms and
/// the candidate's unrotated histogram.
double rotation_l1(const Track& query, const Track& candidate);

}  // namespace simscore
