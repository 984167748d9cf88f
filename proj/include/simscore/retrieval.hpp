#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simscore/measures.hpp"
#include "simscore/track_store.hpp"

namespace simscore {

inline constexpr std::size_t kDefaultFilterSize = 1000;

/// Query x candidate distances. Cells where the query and candidate ids
/// coincide are excluded from every ranking and statistic.
struct DistanceTable {
    std::vector<std::string> queries;
    std::vector<std::string> candidates;
    std::vector<double> values;  // row-major

    DistanceTable() = default;
    DistanceTable(std::vector<std::string> query_ids, std::vector<std::string> candidate_ids,
                  double fill = 0.0);

    std::size_t rows() const { return queries.size(); }
    std::size_t cols() const { return candidates.size(); }
    double at(std::size_t q, std::size_t c) const { return values[q * cols() + c]; }
    double& at(std::size_t q, std::size_t c) { return values[q * cols() + c]; }
    bool excluded(std::size_t q, std::size_t c) const { return queries[q] == candidates[c]; }

    /// Candidate indices for query q by ascending distance, ties by id;
    /// the excluded cell is left out.
    std::vector<std::size_t> ranking(std::size_t q) const;

    /// Average ranks (1-based) of every candidate within row q; the excluded
    /// cell gets 0.
    std::vector<double> row_ranks(std::size_t q) const;

    bool same_layout(const DistanceTable& other) const {
        return queries == other.queries && candidates == other.candidates;
    }
};

/// Average (fractional) ranks of `values`, 1-based; equal values share the
/// mean of the positions they occupy.
std::vector<double> average_ranks(const std::vector<double>& values);

/// Top-L candidates by rotation-minimised L1 histogram distance, ties by id.
/// L is clamped to the number of candidates.
std::vector<std::string> filter_stage(const TrackStore& store, const std::string& query_id,
                                      std::size_t filter_size = kDefaultFilterSize);

/// Distances from the query to every store track, in store order. Each
/// shortlisted candidate is OTI-transposed towards the query and scored with
/// `measure`; all other cells, including the query itself, are +infinity.
std::vector<double> refine(const TrackStore& store, const std::string& query_id,
                           const std::vector<std::string>& shortlist, const Measure& measure);

/// Filter then refine for every track as a query. Without a codebook the
/// filter is skipped and every candidate is refined. `measure` must already
/// be prepared for `store`.
DistanceTable retrieve(const TrackStore& store, const Measure& measure, std::size_t filter_size,
                       int jobs = 1);

/// Every ordered pair without a filter stage: refine against the full store.
DistanceTable pairwise(const TrackStore& store, const Measure& measure, int jobs = 1);

/// Per-candidate column z-score over the finite, non-excluded entries
/// (population sigma). Columns with sigma < 1e-12 are only centred; columns
/// with fewer than two usable entries are left unchanged.
DistanceTable normalize_distances(const DistanceTable& table);

/// d' = 1 - 1 / rank(d), rank taken within each query row (average ranks).
DistanceTable inverse_rank(const DistanceTable& table);

/// max(a, b) * beta + min(a, b) * (1 - beta), entrywise.
DistanceTable combine(const DistanceTable& a, const DistanceTable& b, double beta);

/// Standard normal entries, determined by the seed.
DistanceTable random_baseline(const TrackStore& store, std::uint64_t seed);

/// 1 - max over 12 transpositions and all lags of the normalised
/// cross-correlation of the two mean-removed beat-chroma matrices. Lags whose
/// overlap is shorter than half the shorter sequence are not considered.
double crosscorr_baseline(const ChromaSequence& x, const ChromaSequence& y);

}  // namespace simscore
