#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "simscore/config.hpp"
#include "simscore/evaluation.hpp"
#include "simscore/io.hpp"
#include "simscore/parallel.hpp"
#include "simscore/pipeline.hpp"

using namespace simscore;

namespace {

struct MeasureFlags {
    std::string measure = "dcross_cont";
    std::string compressor = "seq_dict";
    std::string predictor = "ppmc";
    int order = kDefaultPpmOrder;
    int d = 4;
    int tau = 1;
    int horizon = 1;
    int radius = 8;
    std::string block_sort_cmd;
    std::uint64_t seed = 0;

    void add_to(CLI::App* app) {
        app->add_option("--measure", measure, "Distance measure id")->capture_default_str();
        app->add_option("--compressor", compressor, "seq_dict, ppm or block_sort")->capture_default_str();
        app->add_option("--predictor", predictor, "ppmc or lz78")->capture_default_str();
        app->add_option("--order", order, "PPM maximum context order")->capture_default_str();
        app->add_option("--d", d, "Embedding dimension")->capture_default_str();
        app->add_option("--tau", tau, "Embedding delay")->capture_default_str();
        app->add_option("--horizon", horizon, "Prediction horizon")->capture_default_str();
        app->add_option("--radius", radius, "Self-prediction exclusion radius")->capture_default_str();
        app->add_option("--block-sort-cmd", block_sort_cmd, "External block-sorting compressor command");
        app->add_option("--seed", seed, "Seed for the random baseline")->capture_default_str();
    }

    MeasureConfig resolve() const {
        MeasureConfig mc;
        mc.id = measure;
        mc.compressor = parse_compressor_id(compressor);
        mc.compressor_options.ppm_order = order;
        mc.compressor_options.block_sort_cmd = block_sort_cmd;
        mc.predictor = {parse_predictor_kind(predictor), order};
        mc.embedding = {d, tau, horizon, radius};
        validate(mc.embedding);
        if (const std::string w = grid_warning(mc.embedding); !w.empty()) {
            std::fprintf(stderr, "warning: %s\n", w.c_str());
        }
        return mc;
    }
};

TrackStore load_store(const std::string& tracks_dir, const std::string& codebook_path) {
    std::optional<Codebook> codebook;
    if (!codebook_path.empty()) {
        codebook = read_codebook(codebook_path).codebook;
    }
    return build_store(read_track_dir(tracks_dir), std::move(codebook));
}

std::unique_ptr<Measure> prepared_measure(const MeasureFlags& flags, const TrackStore& store, int jobs) {
    auto measure = make_measure(flags.resolve());
    if (measure->needs_symbols() && !store.has_symbols()) {
        throw Error("measure " + flags.measure + " needs --codebook");
    }
    measure->prepare(store, jobs);
    return measure;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (!cur.empty()) {
        out.push_back(cur);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Information-theoretic similarity for chroma sequences and cover-song retrieval"};
    app.require_subcommand(1);
    int jobs = default_jobs();
    app.add_option("--jobs", jobs, "Worker threads (default: SIMSCORE_JOBS or 1)");

    // features
    auto* features = app.add_subcommand("features", "Beat-synchronise and normalise raw track files");
    std::string feat_in, feat_out;
    double pbr = kDefaultBeatRate;
    features->add_option("--input-dir", feat_in, "Directory of track JSON files")->required();
    features->add_option("--output-dir", feat_out, "Where processed tracks are written")->required();
    features->add_option("--pbr", pbr, "Preferred beat rate (beats per minute)")->capture_default_str();

    // quantize
    auto* quantize = app.add_subcommand("quantize", "Train a K-means codebook and/or map tracks to symbols");
    int k = 16;
    int restarts = 20;
    std::uint64_t q_seed = 0;
    std::size_t max_train = 200000;
    std::string train_dir, apply_dir, codebook_path, symbols_dir;
    quantize->add_option("--codebook-size", k, "Number of centroids K")->capture_default_str();
    quantize->add_option("--restarts", restarts, "K-means restarts")->capture_default_str();
    quantize->add_option("--seed", q_seed, "Seed")->capture_default_str();
    quantize->add_option("--max-train-vectors", max_train, "Subsample cap for training")->capture_default_str();
    quantize->add_option("--train", train_dir, "Train on the tracks in this directory");
    quantize->add_option("--apply", apply_dir, "Quantise the tracks in this directory");
    quantize->add_option("--codebook", codebook_path, "Codebook CSV (written by --train, read by --apply)")
        ->required();
    quantize->add_option("--output-dir", symbols_dir, "Where symbol files are written");

    // distance
    auto* distance = app.add_subcommand("distance", "All pairwise distances between tracks");
    MeasureFlags dist_flags;
    std::string dist_tracks, dist_codebook, dist_out;
    dist_flags.add_to(distance);
    distance->add_option("--tracks", dist_tracks, "Directory of processed tracks")->required();
    distance->add_option("--codebook", dist_codebook, "Codebook CSV for symbolic measures");
    distance->add_option("--output", dist_out, "Distance CSV")->required();

    // retrieve
    auto* retrieve_cmd = app.add_subcommand("retrieve", "Filter-and-refine retrieval for every track");
    MeasureFlags ret_flags;
    std::string ret_tracks, ret_codebook, ret_out, normalize = "off";
    std::size_t filter_size = kDefaultFilterSize;
    ret_flags.add_to(retrieve_cmd);
    retrieve_cmd->add_option("--tracks", ret_tracks, "Directory of processed tracks")->required();
    retrieve_cmd->add_option("--codebook", ret_codebook, "Codebook CSV; enables the filter stage");
    retrieve_cmd->add_option("--filter-size", filter_size, "Shortlist length L")->capture_default_str();
    retrieve_cmd->add_option("--normalize", normalize, "Column-normalise distances")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    retrieve_cmd->add_option("--output", ret_out, "Results CSV")->required();

    // combine
    auto* combine_cmd = app.add_subcommand("combine", "Mix two result tables by inverse rank");
    double beta = 0.5;
    std::vector<std::string> comb_inputs;
    std::string comb_out;
    combine_cmd->add_option("--beta", beta, "Weight of the larger distance")->check(CLI::Range(0.0, 1.0))->required();
    combine_cmd->add_option("--inputs", comb_inputs, "Two distance or results CSVs")->expected(2)->required();
    combine_cmd->add_option("--output", comb_out, "Results CSV")->required();

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Retrieval metrics for one or more result tables");
    std::vector<std::string> eval_inputs;
    std::string eval_tracks, eval_out, metrics_list = "map,p@5,p@10,p@20";
    evaluate->add_option("--results", eval_inputs, "Results or distance CSVs")->required();
    evaluate->add_option("--tracks", eval_tracks, "Directory of tracks (cover-set labels)")->required();
    evaluate->add_option("--metrics", metrics_list, "Subset of map,p@5,p@10,p@20,friedman")->capture_default_str();
    evaluate->add_option("--output", eval_out, "Metrics JSON (stdout when omitted)");

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic cover-set collection");
    SyntheticSpec spec;
    std::string synth_out;
    synth->add_option("--sets", spec.cover_sets, "Number of cover sets")->capture_default_str();
    synth->add_option("--covers", spec.covers_per_set, "Tracks per cover set")->capture_default_str();
    synth->add_option("--length", spec.length, "Beats per base sequence")->capture_default_str();
    synth->add_option("--transposition", spec.transposition, "Maximum pitch shift")->capture_default_str();
    synth->add_option("--jitter", spec.jitter, "Fraction of beats inserted or deleted")->capture_default_str();
    synth->add_option("--noise", spec.noise, "Additive noise std")->capture_default_str();
    synth->add_option("--smoothing", spec.smoothing, "AR(1) coefficient of the base walk")->capture_default_str();
    synth->add_option("--seed", spec.seed, "Seed")->capture_default_str();
    synth->add_option("--output-dir", synth_out, "Where track JSON files are written")->required();

    // run
    auto* run = app.add_subcommand("run", "Run the whole pipeline from a config file");
    std::string config_path;
    std::vector<std::string> overrides;
    run->add_option("--config", config_path, "key = value config file");
    run->add_option("--set", overrides, "Override a config key (key=value); repeatable");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*features) {
            for (const TrackRecord& t : read_track_dir(feat_in, pbr)) {
                write_track_json(fs::path(feat_out) / track_file_name(t.id, ".json"), t);
            }
        } else if (*quantize) {
            if (train_dir.empty() && apply_dir.empty()) {
                throw Error("quantize needs --train and/or --apply");
            }
            if (k < 2 || k > 48) {
                std::fprintf(stderr, "warning: codebook size %d is outside 2..48\n", k);
            }
            if (!train_dir.empty()) {
                KMeansOptions opt;
                opt.clusters = k;
                opt.restarts = restarts;
                opt.seed = q_seed;
                const auto points = training_vectors(read_track_dir(train_dir), max_train, q_seed);
                const KMeansResult fit = kmeans_fit(points, opt, jobs);
                write_codebook(codebook_path, fit.codebook, q_seed);
                std::fprintf(stderr, "codebook K=%d mse=%.6g\n", fit.codebook.size(), fit.mse);
            }
            if (!apply_dir.empty()) {
                if (symbols_dir.empty()) {
                    throw Error("--apply needs --output-dir");
                }
                const Codebook cb = read_codebook(codebook_path).codebook;
                for (const TrackRecord& t : read_track_dir(apply_dir)) {
                    write_symbols(fs::path(symbols_dir) / track_file_name(t.id, ".txt"), assign(cb, t.chroma));
                }
            }
        } else if (*distance) {
            const TrackStore store = load_store(dist_tracks, dist_codebook);
            const auto measure = prepared_measure(dist_flags, store, jobs);
            write_distance_csv(dist_out, pairwise(store, *measure, jobs));
        } else if (*retrieve_cmd) {
            const TrackStore store = load_store(ret_tracks, ret_codebook);
            const auto measure = prepared_measure(ret_flags, store, jobs);
            DistanceTable table = retrieve(store, *measure, filter_size, jobs);
            if (normalize == "on") {
                table = normalize_distances(table);
            }
            write_results_csv(ret_out, table);
        } else if (*combine_cmd) {
            const DistanceTable a = read_distance_csv(comb_inputs[0]);
            const DistanceTable b = read_distance_csv(comb_inputs[1]);
            write_results_csv(comb_out, combine(inverse_rank(a), inverse_rank(b), beta));
        } else if (*evaluate) {
            CoverSets sets;
            for (const TrackRecord& t : read_track_dir(eval_tracks)) {
                sets.emplace(t.id, t.cover_set);
            }
            std::vector<DistanceTable> tables;
            for (const auto& path : eval_inputs) {
                tables.push_back(read_distance_csv(path));
            }
            Metrics metrics;
            bool want_friedman = false;
            bool want_map = false;
            for (const std::string& m : split_list(metrics_list)) {
                if (m == "map") {
                    want_map = true;
                } else if (m == "friedman") {
                    want_friedman = true;
                } else if (m.rfind("p@", 0) == 0) {
                    const int r = std::stoi(m.substr(2));
                    metrics.precision_at[r] = precision_at_r(tables.front(), sets, r);
                } else {
                    throw Error("unknown metric: " + m);
                }
            }
            metrics.map = mean_average_precision(tables.front(), sets);
            auto doc = nlohmann::ordered_json::parse(metrics_to_json(metrics));
            if (!want_map) {
                doc.erase("map");
            }
            if (tables.size() > 1) {
                nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
                for (std::size_t i = 0; i < tables.size(); ++i) {
                    inputs.push_back({{"path", eval_inputs[i]}, {"map", mean_average_precision(tables[i], sets).map}});
                }
                doc["inputs"] = std::move(inputs);
            }
            if (want_friedman) {
                const FriedmanResult fr = friedman_mean_ranks(tables, sets);
                doc["friedman"] = {{"mean_ranks", fr.mean_ranks}, {"chi_square", fr.chi_square},
                                   {"queries", fr.queries}};
            }
            const std::string text = doc.dump(2) + "\n";
            if (eval_out.empty()) {
                std::fputs(text.c_str(), stdout);
            } else {
                write_text(eval_out, text);
            }
        } else if (*synth) {
            for (const TrackRecord& t : generate_synthetic_tracks(spec)) {
                write_track_json(fs::path(synth_out) / track_file_name(t.id, ".json"), t);
            }
        } else if (*run) {
            ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
            for (const std::string& kv : overrides) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) {
                    throw Error("--set expects key=value");
                }
                set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
            }
            const RunOutputs out = run_experiment(cfg, jobs);
            std::fprintf(stderr, "MAP %.6f over %zu queries\n", out.metrics.map.map,
                         out.metrics.map.per_query.size());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
