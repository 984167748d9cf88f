#include "simscore/config.hpp"

#include <charconv>
#include <cstdio>
#include <functional>
#include <sstream>
#include <vector>

#include "simscore/io.hpp"

namespace simscore {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_integer(const std::string& key, const std::string& v) {
    T out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw Error("invalid value for " + key + ": " + v);
    }
    return out;
}

double parse_real(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0') {
        throw Error("invalid value for " + key + ": " + v);
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "on" || v == "true" || v == "1") {
        return true;
    }
    if (v == "off" || v == "false" || v == "0") {
        return false;
    }
    throw Error("invalid value for " + key + ": " + v);
}

struct Field {
    const char* key;
    std::function<std::string(const ExperimentConfig&)> get;
    std::function<void(ExperimentConfig&, const std::string&)> set;
};

#define SIMSCORE_STRING(name, member)                                          \
    Field {                                                                    \
        name, [](const ExperimentConfig& c) { return c.member; },              \
            [](ExperimentConfig& c, const std::string& v) { c.member = v; }    \
    }
#define SIMSCORE_INT(name, member, type)                                                    \
    Field {                                                                                 \
        name, [](const ExperimentConfig& c) { return std::to_string(c.member); },           \
            [](ExperimentConfig& c, const std::string& v) { c.member = parse_integer<type>(name, v); } \
    }
#define SIMSCORE_REAL(name, member)                                                         \
    Field {                                                                                 \
        name, [](const ExperimentConfig& c) { return format_double(c.member); },            \
            [](ExperimentConfig& c, const std::string& v) { c.member = parse_real(name, v); } \
    }

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        SIMSCORE_STRING("input_dir", input_dir),
        SIMSCORE_STRING("output_dir", output_dir),
        SIMSCORE_STRING("codebook", codebook),
        SIMSCORE_REAL("pbr", pbr),
        SIMSCORE_INT("codebook_size", codebook_size, int),
        SIMSCORE_INT("restarts", restarts, int),
        SIMSCORE_INT("max_train_vectors", max_train_vectors, std::size_t),
        SIMSCORE_INT("seed", seed, std::uint64_t),
        SIMSCORE_STRING("measure", measure.id),
        Field{"compressor", [](const ExperimentConfig& c) { return std::string(to_string(c.measure.compressor)); },
              [](ExperimentConfig& c, const std::string& v) { c.measure.compressor = parse_compressor_id(v); }},
        Field{"predictor", [](const ExperimentConfig& c) { return std::string(to_string(c.measure.predictor.kind)); },
              [](ExperimentConfig& c, const std::string& v) { c.measure.predictor.kind = parse_predictor_kind(v); }},
        Field{"order", [](const ExperimentConfig& c) { return std::to_string(c.measure.predictor.order); },
              [](ExperimentConfig& c, const std::string& v) {
                  c.measure.predictor.order = parse_integer<int>("order", v);
                  c.measure.compressor_options.ppm_order = c.measure.predictor.order;
              }},
        SIMSCORE_STRING("block_sort_cmd", measure.compressor_options.block_sort_cmd),
        SIMSCORE_INT("d", measure.embedding.dimension, int),
        SIMSCORE_INT("tau", measure.embedding.delay, int),
        SIMSCORE_INT("horizon", measure.embedding.horizon, int),
        SIMSCORE_INT("radius", measure.embedding.exclusion_radius, int),
        SIMSCORE_INT("filter_size", filter_size, std::size_t),
        Field{"normalize", [](const ExperimentConfig& c) { return std::string(c.normalize ? "on" : "off"); },
              [](ExperimentConfig& c, const std::string& v) { c.normalize = parse_bool("normalize", v); }},
        SIMSCORE_STRING("combine_with", combine_with),
        SIMSCORE_REAL("beta", beta),
        SIMSCORE_INT("synth_sets", synth.cover_sets, int),
        SIMSCORE_INT("synth_covers", synth.covers_per_set, int),
        SIMSCORE_INT("synth_length", synth.length, int),
        SIMSCORE_INT("synth_transposition", synth.transposition, int),
        SIMSCORE_REAL("synth_jitter", synth.jitter),
        SIMSCORE_REAL("synth_noise", synth.noise),
        SIMSCORE_REAL("synth_smoothing", synth.smoothing),
    };
    return table;
}

#undef SIMSCORE_STRING
#undef SIMSCORE_INT
#undef SIMSCORE_REAL

}  // namespace

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return config_entries(a) == config_entries(b) && a.measure.seed == b.measure.seed &&
           a.synth.seed == b.synth.seed;
}

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    for (const Field& f : fields()) {
        if (key == f.key) {
            f.set(cfg, value);
            // One seed drives every stochastic stage.
            cfg.measure.seed = cfg.seed;
            cfg.synth.seed = cfg.seed;
            return;
        }
    }
    throw Error("unknown config key: " + key);
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error("config line " + std::to_string(lineno) + ": expected key = value");
        }
        set_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) { return parse_config(read_text(path)); }

std::map<std::string, std::string> config_entries(const ExperimentConfig& cfg) {
    std::map<std::string, std::string> out;
    for (const Field& f : fields()) {
        out.emplace(f.key, f.get(cfg));
    }
    return out;
}

std::string config_to_text(const ExperimentConfig& cfg) {
    std::string text;
    for (const Field& f : fields()) {
        text += std::string(f.key) + " = " + f.get(cfg) + "\n";
    }
    return text;
}

void validate(const ExperimentConfig& cfg) {
    if (!(cfg.pbr > 0.0)) {
        throw Error("pbr must be positive");
    }
    if (cfg.codebook_size < 1) {
        throw Error("codebook_size must be positive");
    }
    if (cfg.restarts < 1) {
        throw Error("restarts must be at least 1");
    }
    if (cfg.max_train_vectors < 1) {
        throw Error("max_train_vectors must be positive");
    }
    if (cfg.filter_size < 1) {
        throw Error("filter_size must be positive");
    }
    if (!(cfg.beta >= 0.0 && cfg.beta <= 1.0)) {
        throw Error("beta must be in [0, 1]");
    }
    if (cfg.output_dir.empty()) {
        throw Error("output_dir must be set");
    }
    validate(cfg.measure.embedding);
    if (cfg.input_dir.empty()) {
        validate(cfg.synth);
    }
    if (cfg.codebook_size < 2 || cfg.codebook_size > 48) {
        std::fprintf(stderr, "warning: codebook_size %d is outside 2..48\n", cfg.codebook_size);
    }
}

}  // namespace simscore
