#pragma once

#include <string>
#include <vector>

#include "simscore/config.hpp"
#include "simscore/io.hpp"

namespace simscore {

/// Failure inside one pipeline stage; what() starts with "[stage] ".
class StageError : public Error {
  public:
    StageError(const std::string& stage, const std::string& message)
        : Error("[" + stage + "] " + message), stage_(stage) {}

    const std::string& stage() const { return stage_; }

  private:
    std::string stage_;
};

/// Pools the rows of every track; above `cap` rows a seeded subset is kept
/// (in original order).
std::vector<Chroma> training_vectors(const std::vector<TrackRecord>& tracks, std::size_t cap, std::uint64_t seed);

struct RunOutputs {
    DistanceTable table;
    Metrics metrics;
};

/// features -> quantize -> retrieve -> evaluate. Writes under output_dir:
/// tracks/*.json, codebook.csv (when trained), symbols/*.txt, results.csv,
/// metrics.json and config.txt.
RunOutputs run_experiment(const ExperimentConfig& cfg, int jobs = 1);

}  // namespace simscore
