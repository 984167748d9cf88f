#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "simscore/compress_distance.hpp"
#include "simscore/config.hpp"
#include "simscore/evaluation.hpp"
#include "simscore/features.hpp"
#include "simscore/pipeline.hpp"
#include "simscore/predict_continuous.hpp"
#include "simscore/predict_discrete.hpp"
#include "simscore/quantize.hpp"
#include "simscore/retrieval.hpp"
#include "simscore/synthetic.hpp"

namespace py = pybind11;
using namespace simscore;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

ChromaSequence to_sequence(const Array& a) {
    if (a.ndim() != 2 || a.shape(1) != static_cast<py::ssize_t>(kChromaBins)) {
        throw Error("chroma arrays must have shape (n, 12)");
    }
    ChromaSequence seq;
    seq.rows.resize(static_cast<std::size_t>(a.shape(0)));
    const double* p = a.data();
    for (std::size_t i = 0; i < seq.size(); ++i) {
        std::copy(p + i * kChromaBins, p + (i + 1) * kChromaBins, seq.rows[i].begin());
    }
    return seq;
}

Array to_array(const ChromaSequence& seq) {
    Array out({static_cast<py::ssize_t>(seq.size()), static_cast<py::ssize_t>(kChromaBins)});
    double* p = out.mutable_data();
    for (const Chroma& row : seq.rows) {
        p = std::copy(row.begin(), row.end(), p);
    }
    return out;
}

SymbolString to_symbols(std::vector<int> s, int k) {
    SymbolString out{std::move(s), k};
    validate(out);
    return out;
}

EmbeddingConfig embedding(int d, int tau, int h, int radius) {
    EmbeddingConfig cfg{d, tau, h, radius};
    validate(cfg);
    return cfg;
}

PredictorSpec predictor(const std::string& kind, int order) { return {parse_predictor_kind(kind), order}; }

DistanceTable to_table(const std::vector<std::string>& queries, const std::vector<std::string>& candidates,
                       const Array& values) {
    if (values.ndim() != 2 || values.shape(0) != static_cast<py::ssize_t>(queries.size()) ||
        values.shape(1) != static_cast<py::ssize_t>(candidates.size())) {
        throw Error("values must have shape (len(queries), len(candidates))");
    }
    DistanceTable t(queries, candidates);
    std::copy(values.data(), values.data() + values.size(), t.values.begin());
    return t;
}

Array table_values(const DistanceTable& t) {
    Array out({static_cast<py::ssize_t>(t.rows()), static_cast<py::ssize_t>(t.cols())});
    std::copy(t.values.begin(), t.values.end(), out.mutable_data());
    return out;
}

}  // namespace

PYBIND11_MODULE(_simscore, m) {
    m.doc() = "Chroma-sequence similarity measures for cover song retrieval";

    py::register_exception<Error>(m, "SimscoreError", PyExc_ValueError);

    py::class_<DistanceTable>(m, "DistanceTable")
        .def(py::init(&to_table), py::arg("queries"), py::arg("candidates"), py::arg("values"))
        .def_readonly("queries", &DistanceTable::queries)
        .def_readonly("candidates", &DistanceTable::candidates)
        .def_property_readonly("values", &table_values)
        .def("ranking", &DistanceTable::ranking);

    // Features.
    m.def("sqrt_compress_normalize", [](const Array& a) { return to_array(sqrt_compress_normalize(to_sequence(a))); });
    m.def("transpose", [](const Array& a, int shift) { return to_array(transpose(to_sequence(a), shift)); });
    m.def("oti", [](const Array& x, const Array& y) {
        return oti(summary(to_sequence(x)), summary(to_sequence(y)));
    });

    // Quantisation.
    m.def(
        "kmeans_fit",
        [](const Array& points, int clusters, int restarts, std::uint64_t seed) {
            KMeansOptions opt;
            opt.clusters = clusters;
            opt.restarts = restarts;
            opt.seed = seed;
            const ChromaSequence pts = to_sequence(points);
            const KMeansResult fit = kmeans_fit(pts.rows, opt);
            return py::make_tuple(to_array(ChromaSequence{fit.codebook.centroids}), fit.mse);
        },
        py::arg("points"), py::arg("clusters") = 16, py::arg("restarts") = 20, py::arg("seed") = 0);
    m.def("assign", [](const Array& codebook, const Array& seq) {
        return assign(Codebook{to_sequence(codebook).rows}, to_sequence(seq)).symbols;
    });

    // Compression distances.
    m.def(
        "code_length",
        [](const std::vector<int>& s, int k, const std::string& compressor) {
            return code_length(parse_compressor_id(compressor), to_symbols(s, k)).bits;
        },
        py::arg("symbols"), py::arg("alphabet_size"), py::arg("compressor") = "seq_dict");
    m.def(
        "ncd",
        [](const std::vector<int>& x, const std::vector<int>& y, int k, const std::string& compressor) {
            return ncd(parse_compressor_id(compressor), to_symbols(x, k), to_symbols(y, k));
        },
        py::arg("x"), py::arg("y"), py::arg("alphabet_size"), py::arg("compressor") = "seq_dict");
    m.def(
        "ncda",
        [](const std::vector<int>& x, const std::vector<int>& y, int k, const std::string& compressor) {
            return ncda(parse_compressor_id(compressor), to_symbols(x, k), to_symbols(y, k));
        },
        py::arg("x"), py::arg("y"), py::arg("alphabet_size"), py::arg("compressor") = "seq_dict");

    // Discrete prediction.
    m.def(
        "self_log_loss",
        [](const std::vector<int>& s, int k, const std::string& kind, int order) {
            return self_log_loss(predictor(kind, order), to_symbols(s, k)).bits_per_symbol;
        },
        py::arg("symbols"), py::arg("alphabet_size"), py::arg("predictor") = "ppmc",
        py::arg("order") = kDefaultPpmOrder);
    m.def(
        "cross_log_loss",
        [](const std::vector<int>& train, const std::vector<int>& eval, int k, const std::string& kind, int order) {
            return cross_log_loss(predictor(kind, order), to_symbols(train, k), to_symbols(eval, k)).bits_per_symbol;
        },
        py::arg("train"), py::arg("eval"), py::arg("alphabet_size"), py::arg("predictor") = "ppmc",
        py::arg("order") = kDefaultPpmOrder);
    m.def(
        "d_cross_discrete",
        [](const std::vector<int>& x, const std::vector<int>& y, int k, const std::string& kind, int order) {
            return d_cross_discrete(predictor(kind, order), to_symbols(x, k), to_symbols(y, k));
        },
        py::arg("x"), py::arg("y"), py::arg("alphabet_size"), py::arg("predictor") = "ppmc",
        py::arg("order") = kDefaultPpmOrder);
    m.def("jsd", [](const std::vector<double>& p, const std::vector<double>& q) {
        return jsd(Histogram{p}, Histogram{q});
    });

    // Continuous prediction.
    m.def(
        "cross_predict_neighbors",
        [](const Array& x, const Array& y, int d, int tau, int h) {
            return cross_predict(to_sequence(x), to_sequence(y), embedding(d, tau, h, 8)).neighbors;
        },
        py::arg("x"), py::arg("y"), py::arg("d") = 4, py::arg("tau") = 1, py::arg("h") = 1);
    m.def(
        "self_predict_neighbors",
        [](const Array& x, int d, int tau, int h, int radius) {
            return self_predict(to_sequence(x), embedding(d, tau, h, radius)).neighbors;
        },
        py::arg("x"), py::arg("d") = 4, py::arg("tau") = 1, py::arg("h") = 1, py::arg("radius") = 8);
    m.def("gaussian_entropy_bits", [](const std::vector<double>& covariance, std::size_t k) {
        return gaussian_entropy_bits(covariance, k);
    });
    m.def(
        "d_cross_continuous",
        [](const Array& x, const Array& y, int d, int tau, int h, int radius) {
            return d_cross_continuous(to_sequence(x), to_sequence(y), embedding(d, tau, h, radius));
        },
        py::arg("x"), py::arg("y"), py::arg("d") = 4, py::arg("tau") = 1, py::arg("h") = 1, py::arg("radius") = 8);
    m.def(
        "nid_continuous",
        [](const Array& x, const Array& y, int d, int tau, int h, int radius) {
            return nid_continuous(to_sequence(x), to_sequence(y), embedding(d, tau, h, radius));
        },
        py::arg("x"), py::arg("y"), py::arg("d") = 4, py::arg("tau") = 1, py::arg("h") = 1, py::arg("radius") = 8);
    m.def(
        "nmse_cross",
        [](const Array& x, const Array& y, int d, int tau, int h) {
            return nmse_cross(to_sequence(x), to_sequence(y), embedding(d, tau, h, 8));
        },
        py::arg("x"), py::arg("y"), py::arg("d") = 4, py::arg("tau") = 1, py::arg("h") = 1);

    // Retrieval and evaluation.
    m.def("normalize_distances", &normalize_distances);
    m.def("inverse_rank", &inverse_rank);
    m.def("combine", &combine, py::arg("a"), py::arg("b"), py::arg("beta"));
    m.def("average_precision", &average_precision);
    m.def("mean_average_precision", [](const DistanceTable& t, const CoverSets& sets) {
        return mean_average_precision(t, sets).map;
    });
    m.def("precision_at_r", &precision_at_r);

    // Synthetic data and the full pipeline.
    m.def(
        "generate_synthetic",
        [](int sets, int covers, int length, int transposition, double jitter, double noise, double smoothing,
           std::uint64_t seed) {
            py::list out;
            for (const TrackRecord& t : generate_synthetic_tracks(
                     SyntheticSpec{sets, covers, length, transposition, jitter, noise, smoothing, seed})) {
                py::dict d;
                d["id"] = t.id;
                d["cover_set"] = t.cover_set;
                d["chroma"] = to_array(t.chroma);
                out.append(d);
            }
            return out;
        },
        py::arg("cover_sets") = 10, py::arg("covers_per_set") = 3, py::arg("length") = 200,
        py::arg("transposition") = 5, py::arg("jitter") = 0.1, py::arg("noise") = 0.05, py::arg("smoothing") = 0.9,
        py::arg("seed") = 0);
    m.def(
        "run_experiment",
        [](const std::map<std::string, std::string>& settings, int jobs) {
            ExperimentConfig cfg;
            for (const auto& [key, value] : settings) {
                set_config_value(cfg, key, value);
            }
            const RunOutputs out = run_experiment(cfg, jobs);
            py::dict metrics;
            metrics["map"] = out.metrics.map.map;
            for (const auto& [r, p] : out.metrics.precision_at) {
                metrics[py::str("p@" + std::to_string(r))] = p;
            }
            return py::make_tuple(out.table, metrics);
        },
        py::arg("settings"), py::arg("jobs") = 1);
}
