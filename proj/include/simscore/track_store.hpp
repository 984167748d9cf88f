#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "simscore/features.hpp"
#include "simscore/quantize.hpp"
#include "simscore/types.hpp"

namespace simscore {

/// Every representation of one track the retrieval stages need. When the
/// store has a codebook, `rotated_symbols[r]` quantises transpose(chroma, r)
/// and `rotation_histograms[r]` is its histogram.
struct Track {
    std::string id;
    std::string cover_set;
    ChromaSequence chroma;
    SummaryVector summary{};
    std::array<SymbolString, kChromaBins> rotated_symbols;
    std::array<Histogram, kChromaBins> rotation_histograms;

    const SymbolString& symbols() const { return rotated_symbols[0]; }
};

/// A track as read from disk or generated, before any derived forms.
struct TrackRecord {
    std::string id;
    std::string cover_set;
    ChromaSequence chroma;
};

class TrackStore {
  public:
    TrackStore() = default;
    explicit TrackStore(std::optional<Codebook> codebook) : codebook_(std::move(codebook)) {}

    /// Derives the summary and, with a codebook, the quantised forms.
    /// Throws on duplicate ids or an empty sequence.
    void add(std::string id, std::string cover_set, ChromaSequence chroma);

    const std::vector<Track>& tracks() const { return tracks_; }
    const Track& operator[](std::size_t i) const { return tracks_[i]; }
    std::size_t size() const { return tracks_.size(); }

    /// Throws "unknown track id" when absent.
    std::size_t index_of(const std::string& id) const;
    const Track& find(const std::string& id) const { return tracks_[index_of(id)]; }

    const std::optional<Codebook>& codebook() const { return codebook_; }
    bool has_symbols() const { return codebook_.has_value(); }

    std::vector<std::string> ids() const;
    std::unordered_map<std::string, std::string> cover_sets() const;

  private:
    std::optional<Codebook> codebook_;
    std::vector<Track> tracks_;
    std::unordered_map<std::string, std::size_t> index_;
};

TrackStore build_store(const std::vector<TrackRecord>& records, std::optional<Codebook> codebook = std::nullopt);

}  // namespace simscore
