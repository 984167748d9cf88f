#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "simscore/types.hpp"

namespace simscore {

/// K centroids in chroma space.
struct Codebook {
    std::vector<Chroma> centroids;

    int size() const { return static_cast<int>(centroids.size()); }
};

struct KMeansOptions {
    int clusters = 16;
    int restarts = 20;
    std::uint64_t seed = 0;
    int max_iterations = 300;
};

/// Outcome of one Lloyd run; `mse_trace[i]` is the mean squared error after
/// the i-th assignment step.
struct KMeansRun {
    Codebook codebook;
    double mse = 0.0;
    std::vector<double> mse_trace;
};

struct KMeansResult {
    Codebook codebook;  // the run with minimum MSE
    double mse = 0.0;
    std::vector<KMeansRun> runs;
};

/// Lloyd's algorithm, `restarts` times from seeded initialisations (K
/// distinct data points chosen without replacement). Stops when the
/// assignment no longer changes or after `max_iterations`. Empty clusters
/// are re-seeded with the point farthest from its centroid. Restarts run on
/// up to `jobs` threads; the result does not depend on `jobs`.
KMeansResult kmeans_fit(std::span<const Chroma> points, const KMeansOptions& options, int jobs = 1);

/// Nearest centroid per row (Euclidean; ties to the smallest index).
SymbolString assign(const Codebook& codebook, const ChromaSequence& seq);

/// Mean squared distance between points and their nearest centroids.
double quantization_mse(const Codebook& codebook, std::span<const Chroma> points);

Histogram histogram(const SymbolString& s);

/// Histogram r is histogram(assign(codebook, transpose(seq, r))).
std::array<Histogram, kChromaBins> rotation_histograms(const Codebook& codebook,
                                                        const ChromaSequence& seq);

}  // namespace simscore
