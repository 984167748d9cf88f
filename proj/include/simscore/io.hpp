#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "simscore/evaluation.hpp"
#include "simscore/quantize.hpp"
#include "simscore/retrieval.hpp"
#include "simscore/track_store.hpp"

namespace simscore {

namespace fs = std::filesystem;

/// Parses a track document. Tracks given as frames + beats are resampled to
/// `pbr`, beat-averaged, square-root compressed and normalised; tracks given
/// as `beat_chroma` are only row-normalised.
TrackRecord parse_track_json(const std::string& text, double pbr = kDefaultBeatRate);
TrackRecord read_track_json(const fs::path& path, double pbr = kDefaultBeatRate);

/// Writes the processed form ({id, cover_set, beat_chroma}).
std::string track_to_json(const TrackRecord& track);
void write_track_json(const fs::path& path, const TrackRecord& track);

/// Every *.json file in `dir`, in file name order.
std::vector<TrackRecord> read_track_dir(const fs::path& dir, double pbr = kDefaultBeatRate);

/// File name used for a track id (path separators replaced).
std::string track_file_name(const std::string& id, const std::string& extension);

struct CodebookFile {
    Codebook codebook;
    std::uint64_t seed = 0;
};

void write_codebook(const fs::path& path, const Codebook& codebook, std::uint64_t seed);
CodebookFile read_codebook(const fs::path& path);

void write_symbols(const fs::path& path, const SymbolString& symbols);
SymbolString read_symbols(const fs::path& path, int alphabet_size);

/// query_id,candidate_id,distance for every non-excluded cell, table order.
void write_distance_csv(const fs::path& path, const DistanceTable& table);

/// query_id,candidate_id,distance,rank; each query's candidates in ranking
/// order, rank 1-based.
void write_results_csv(const fs::path& path, const DistanceTable& table);

/// Reads either CSV layout. Queries keep their order of first appearance.
/// Candidates that are also queries come first in query order, the others
/// follow sorted by id. Missing cells are +infinity.
DistanceTable read_distance_csv(const fs::path& path);

struct Metrics {
    MapResult map;
    std::map<int, double> precision_at;  // r -> p@r
    std::map<std::string, std::string> config;
};

std::string metrics_to_json(const Metrics& metrics);

std::string format_double(double v);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

}  // namespace simscore
