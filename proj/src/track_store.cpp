#include "simscore/track_store.hpp"

namespace simscore {

void TrackStore::add(std::string id, std::string cover_set, ChromaSequence chroma) {
    if (chroma.empty()) {
        throw Error("track " + id + " has an empty sequence");
    }
    if (index_.contains(id)) {
        throw Error("duplicate track id: " + id);
    }
    Track t;
    t.id = std::move(id);
    t.cover_set = std::move(cover_set);
    t.summary = summary(chroma);
    if (codebook_) {
        for (std::size_t r = 0; r < kChromaBins; ++r) {
            t.rotated_symbols[r] = assign(*codebook_, transpose(chroma, static_cast<int>(r)));
            t.rotation_histograms[r] = histogram(t.rotated_symbols[r]);
        }
    }
    t.chroma = std::move(chroma);
    index_.emplace(t.id, tracks_.size());
    tracks_.push_back(std::move(t));
}

std::size_t TrackStore::index_of(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) {
        throw Error("unknown track id: " + id);
    }
    return it->second;
}

std::vector<std::string> TrackStore::ids() const {
    std::vector<std::string> out;
    out.reserve(tracks_.size());
    for (const auto& t : tracks_) {
        out.push_back(t.id);
    }
    return out;
}

std::unordered_map<std::string, std::string> TrackStore::cover_sets() const {
    std::unordered_map<std::string, std::string> out;
    for (const auto& t : tracks_) {
        out.emplace(t.id, t.cover_set);
    }
    return out;
}

TrackStore build_store(const std::vector<TrackRecord>& records, std::optional<Codebook> codebook) {
    TrackStore store(std::move(codebook));
    for (const TrackRecord& r : records) {
        store.add(r.id, r.cover_set, r.chroma);
    }
    return store;
}

}  // namespace simscore
