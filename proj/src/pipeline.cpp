#include "simscore/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace simscore {

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

DistanceTable score(const TrackStore& store, const ExperimentConfig& cfg, const std::string& id, int jobs) {
    MeasureConfig mc = cfg.measure;
    mc.id = id;
    const auto measure = make_measure(mc);
    if (measure->needs_symbols() && !store.has_symbols()) {
        throw Error("measure " + id + " needs a codebook");
    }
    measure->prepare(store, jobs);
    DistanceTable table = retrieve(store, *measure, cfg.filter_size, jobs);
    return cfg.normalize ? normalize_distances(table) : table;
}

}  // namespace

std::vector<Chroma> training_vectors(const std::vector<TrackRecord>& tracks, std::size_t cap, std::uint64_t seed) {
    std::vector<Chroma> pooled;
    for (const TrackRecord& t : tracks) {
        pooled.insert(pooled.end(), t.chroma.rows.begin(), t.chroma.rows.end());
    }
    if (pooled.size() <= cap) {
        return pooled;
    }
    std::vector<std::size_t> idx(pooled.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(seed ^ 0x5eed5a3b1e5ULL);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(cap);
    std::sort(idx.begin(), idx.end());
    std::vector<Chroma> out;
    out.reserve(cap);
    for (std::size_t i : idx) {
        out.push_back(pooled[i]);
    }
    return out;
}

RunOutputs run_experiment(const ExperimentConfig& cfg, int jobs) {
    stage("config", [&] { validate(cfg); });
    const fs::path out_dir = cfg.output_dir;

    const std::vector<TrackRecord> records = stage("features", [&] {
        std::vector<TrackRecord> r =
            cfg.input_dir.empty() ? generate_synthetic_tracks(cfg.synth) : read_track_dir(cfg.input_dir, cfg.pbr);
        for (const TrackRecord& t : r) {
            write_track_json(out_dir / "tracks" / track_file_name(t.id, ".json"), t);
        }
        return r;
    });

    const TrackStore store = stage("quantize", [&] {
        Codebook codebook;
        if (!cfg.codebook.empty()) {
            codebook = read_codebook(cfg.codebook).codebook;
        } else {
            KMeansOptions opt;
            opt.clusters = cfg.codebook_size;
            opt.restarts = cfg.restarts;
            opt.seed = cfg.seed;
            const auto points = training_vectors(records, cfg.max_train_vectors, cfg.seed);
            codebook = kmeans_fit(points, opt, jobs).codebook;
            write_codebook(out_dir / "codebook.csv", codebook, cfg.seed);
        }
        TrackStore s = build_store(records, codebook);
        for (const Track& t : s.tracks()) {
            write_symbols(out_dir / "symbols" / track_file_name(t.id, ".txt"), t.symbols());
        }
        return s;
    });

    RunOutputs out;
    out.table = stage("retrieve", [&] {
        DistanceTable table = score(store, cfg, cfg.measure.id, jobs);
        if (!cfg.combine_with.empty()) {
            const DistanceTable other = score(store, cfg, cfg.combine_with, jobs);
            table = combine(inverse_rank(table), inverse_rank(other), cfg.beta);
        }
        write_results_csv(out_dir / "results.csv", table);
        return table;
    });

    stage("evaluate", [&] {
        const CoverSets sets = store.cover_sets();
        out.metrics.map = mean_average_precision(out.table, sets);
        for (int r : {5, 10, 20}) {
            out.metrics.precision_at[r] = precision_at_r(out.table, sets, r);
        }
        out.metrics.config = config_entries(cfg);
        write_text(out_dir / "metrics.json", metrics_to_json(out.metrics));
        write_text(out_dir / "config.txt", config_to_text(cfg));
    });
    return out;
}

}  // namespace simscore
