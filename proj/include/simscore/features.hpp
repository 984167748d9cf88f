#pragma once

#include <vector>

#include "simscore/types.hpp"

namespace simscore {

/// Frame-level chroma prior to beat synchronisation.
struct FrameChroma {
    std::vector<double> times;  // seconds, strictly increasing
    std::vector<Chroma> vectors;
};

struct BeatGrid {
    std::vector<double> onsets;  // seconds, strictly increasing
};

using SummaryVector = Chroma;

inline constexpr double kDefaultBeatRate = 240.0;

// Throws "invalid frames" / "invalid beat grid" on malformed input.
void validate(const FrameChroma& frames);
void validate(const BeatGrid& grid);

/// Subdivides every beat interval into round(pbr * interval / 60) equal
/// parts (at least one), so the local rate approaches `pbr` beats per minute.
BeatGrid resample_beats(const BeatGrid& grid, double pbr);

/// Row i is the mean of the frames whose time lies in [onset_i, onset_{i+1}).
/// Empty intervals repeat the previous row (all-zero if there is none);
/// frames outside the grid are ignored.
ChromaSequence beat_average(const FrameChroma& frames, const BeatGrid& grid);

/// Element-wise square root followed by per-row L2 normalisation.
/// All-zero rows stay all-zero.
ChromaSequence sqrt_compress_normalize(const ChromaSequence& raw);

/// Per-row L2 normalisation only; all-zero rows stay all-zero.
ChromaSequence normalize_rows(const ChromaSequence& seq);

SummaryVector summary(const ChromaSequence& seq);

/// circshift(v, i)_j = v_{(j - i) mod 12}; `shift` may be any integer.
Chroma circshift(const Chroma& v, int shift);

/// Optimal transposition index: the shift i in [0, 12) maximising
/// hx . circshift(hy, i). Ties go to the smallest shift; returns 0 when
/// both vectors are all-zero.
int oti(const SummaryVector& hx, const SummaryVector& hy);

ChromaSequence transpose(const ChromaSequence& seq, int shift);

}  // namespace simscore
