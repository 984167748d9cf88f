#include "simscore/quantize.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "simscore/features.hpp"
#include "simscore/parallel.hpp"

namespace simscore {

namespace {

double squared_distance(const Chroma& a, const Chroma& b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < kChromaBins; ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return acc;
}

struct Nearest {
    int index;
    double distance;
};

Nearest nearest(const std::vector<Chroma>& centroids, const Chroma& p) {
    Nearest best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < centroids.size(); ++k) {
        const double d = squared_distance(centroids[k], p);
        if (d < best.distance) {
            best = {static_cast<int>(k), d};
        }
    }
    return best;
}

std::vector<Chroma> initial_centroids(std::span<const Chroma> points, int clusters,
                                      std::uint64_t seed) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<Chroma> centroids;
    centroids.reserve(static_cast<std::size_t>(clusters));
    for (std::size_t idx : order) {
        const Chroma& p = points[idx];
        if (std::find(centroids.begin(), centroids.end(), p) == centroids.end()) {
            centroids.push_back(p);
            if (static_cast<int>(centroids.size()) == clusters) {
                return centroids;
            }
        }
    }
    throw Error("too few distinct points");
}

KMeansRun lloyd(std::span<const Chroma> points, int clusters, std::uint64_t seed,
                int max_iterations) {
    const std::size_t n = points.size();
    const auto k_count = static_cast<std::size_t>(clusters);
    KMeansRun run;
    std::vector<Chroma> centroids = initial_centroids(points, clusters, seed);
    std::vector<int> labels(n, -1);
    std::vector<double> distances(n, 0.0);

    for (int iteration = 0; iteration < max_iterations; ++iteration) {
        bool changed = false;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Nearest best = nearest(centroids, points[i]);
            if (best.index != labels[i]) {
                labels[i] = best.index;
                changed = true;
            }
            distances[i] = best.distance;
            total += best.distance;
        }
        run.mse_trace.push_back(total / static_cast<double>(n));
        if (!changed) {
            break;
        }

        std::vector<Chroma> sums(k_count, Chroma{});
        std::vector<std::size_t> counts(k_count, 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto& s = sums[static_cast<std::size_t>(labels[i])];
            for (std::size_t j = 0; j < kChromaBins; ++j) {
                s[j] += points[i][j];
            }
            ++counts[static_cast<std::size_t>(labels[i])];
        }
        for (std::size_t k = 0; k < k_count; ++k) {
            if (counts[k] == 0) {
                // Re-seed with the worst-served point; zero its distance so a
                // second empty cluster picks a different one.
                const auto far = static_cast<std::size_t>(
                    std::max_element(distances.begin(), distances.end()) - distances.begin());
                centroids[k] = points[far];
                distances[far] = 0.0;
                continue;
            }
            for (std::size_t j = 0; j < kChromaBins; ++j) {
                centroids[k][j] = sums[k][j] / static_cast<double>(counts[k]);
            }
        }
    }

    run.codebook.centroids = std::move(centroids);
    run.mse = quantization_mse(run.codebook, points);
    return run;
}

}  // namespace

KMeansResult kmeans_fit(std::span<const Chroma> points, const KMeansOptions& options, int jobs) {
    if (options.clusters < 1) {
        throw Error("codebook size must be positive");
    }
    if (points.size() < static_cast<std::size_t>(options.clusters)) {
        throw Error("too few points");
    }
    if (options.restarts < 1) {
        throw Error("restarts must be at least 1");
    }

    std::mt19937_64 seeder(options.seed);
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(options.restarts));
    for (auto& s : seeds) {
        s = seeder();
    }

    KMeansResult result;
    result.runs.resize(seeds.size());
    parallel_for(seeds.size(), jobs, [&](std::size_t r) {
        result.runs[r] = lloyd(points, options.clusters, seeds[r], options.max_iterations);
    });

    const auto best = std::min_element(result.runs.begin(), result.runs.end(),
                                       [](const KMeansRun& a, const KMeansRun& b) { return a.mse < b.mse; });
    result.codebook = best->codebook;
    result.mse = best->mse;
    return result;
}

SymbolString assign(const Codebook& codebook, const ChromaSequence& seq) {
    if (codebook.centroids.empty()) {
        throw Error("empty codebook");
    }
    if (seq.empty()) {
        throw Error("empty sequence");
    }
    SymbolString out;
    out.alphabet_size = codebook.size();
    out.symbols.reserve(seq.size());
    for (const auto& row : seq.rows) {
        out.symbols.push_back(nearest(codebook.centroids, row).index);
    }
    return out;
}

double quantization_mse(const Codebook& codebook, std::span<const Chroma> points) {
    if (points.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (const auto& p : points) {
        total += nearest(codebook.centroids, p).distance;
    }
    return total / static_cast<double>(points.size());
}

Histogram histogram(const SymbolString& s) {
    validate(s);
    Histogram h;
    h.weights.assign(static_cast<std::size_t>(s.alphabet_size), 0.0);
    for (int c : s.symbols) {
        h.weights[static_cast<std::size_t>(c)] += 1.0;
    }
    for (double& w : h.weights) {
        w /= static_cast<double>(s.size());
    }
    return h;
}

std::array<Histogram, kChromaBins> rotation_histograms(const Codebook& codebook,
                                                        const ChromaSequence& seq) {
    std::array<Histogram, kChromaBins> out;
    for (std::size_t r = 0; r < kChromaBins; ++r) {
        out[r] = histogram(assign(codebook, transpose(seq, static_cast<int>(r))));
    }
    return out;
}

}  // namespace simscore
