#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "simscore/features.hpp"
#include "simscore/measures.hpp"
#include "simscore/retrieval.hpp"
#include "simscore/synthetic.hpp"

namespace simscore {

/// Everything one `run` needs. Text form is one `key = value` per line;
/// blank lines and lines starting with '#' are ignored.
struct ExperimentConfig {
    std::string input_dir;  // empty: generate a synthetic store
    std::string output_dir = "out";
    std::string codebook;   // empty: train one

    double pbr = kDefaultBeatRate;
    int codebook_size = 16;
    int restarts = 20;
    std::size_t max_train_vectors = 200000;
    std::uint64_t seed = 0;

    MeasureConfig measure;
    std::size_t filter_size = kDefaultFilterSize;
    bool normalize = false;
    std::string combine_with;  // second measure id, empty for none
    double beta = 0.5;

    SyntheticSpec synth;

    friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);
};

/// Sets one key from its text value; throws on unknown keys or bad values.
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Every key with its resolved value, in a fixed order.
std::map<std::string, std::string> config_entries(const ExperimentConfig& cfg);
std::string config_to_text(const ExperimentConfig& cfg);

/// Throws on values outside their valid ranges.
void validate(const ExperimentConfig& cfg);

}  // namespace simscore
