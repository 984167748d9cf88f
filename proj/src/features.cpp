#include "simscore/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace simscore {

namespace {

double norm(const Chroma& v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

Chroma scaled_to_unit(const Chroma& v) {
    const double n = norm(v);
    if (n == 0.0) {
        return v;
    }
    Chroma out;
    for (std::size_t j = 0; j < kChromaBins; ++j) {
        out[j] = v[j] / n;
    }
    return out;
}

bool strictly_increasing(const std::vector<double>& xs) {
    return std::adjacent_find(xs.begin(), xs.end(),
                              [](double a, double b) { return !(a < b); }) == xs.end();
}

}  // namespace

void validate(const FrameChroma& frames) {
    if (frames.times.size() != frames.vectors.size()) {
        throw Error("invalid frames: times and vectors differ in length");
    }
    if (!strictly_increasing(frames.times)) {
        throw Error("invalid frames: times not strictly increasing");
    }
    for (const auto& v : frames.vectors) {
        for (double c : v) {
            if (!(c >= 0.0) || !std::isfinite(c)) {
                throw Error("invalid chroma");
            }
        }
    }
}

void validate(const BeatGrid& grid) {
    if (!strictly_increasing(grid.onsets)) {
        throw Error("invalid beat grid: onsets not strictly increasing");
    }
}

BeatGrid resample_beats(const BeatGrid& grid, double pbr) {
    if (grid.onsets.size() < 2) {
        throw Error("insufficient beats");
    }
    if (!(pbr > 0.0)) {
        throw Error("beat rate must be positive");
    }
    validate(grid);

    const double beats_per_second = pbr / 60.0;
    BeatGrid out;
    out.onsets.push_back(grid.onsets.front());
    for (std::size_t i = 0; i + 1 < grid.onsets.size(); ++i) {
        const double start = grid.onsets[i];
        const double span = grid.onsets[i + 1] - start;
        const auto parts = std::max<long>(1, std::lround(span * beats_per_second));
        for (long j = 1; j < parts; ++j) {
            out.onsets.push_back(start + span * static_cast<double>(j) / static_cast<double>(parts));
        }
        out.onsets.push_back(grid.onsets[i + 1]);
    }
    return out;
}

ChromaSequence beat_average(const FrameChroma& frames, const BeatGrid& grid) {
    validate(frames);
    if (grid.onsets.size() < 2) {
        throw Error("insufficient beats");
    }
    validate(grid);

    const std::size_t intervals = grid.onsets.size() - 1;
    ChromaSequence out;
    out.rows.resize(intervals);

    // Frames are sorted, so one sweep assigns each frame to its interval.
    std::size_t f = std::lower_bound(frames.times.begin(), frames.times.end(), grid.onsets.front()) -
                    frames.times.begin();
    bool have_previous = false;
    Chroma previous{};
    for (std::size_t i = 0; i < intervals; ++i) {
        const double end = grid.onsets[i + 1];
        Chroma sum{};
        std::size_t count = 0;
        while (f < frames.times.size() && frames.times[f] < end) {
            for (std::size_t j = 0; j < kChromaBins; ++j) {
                sum[j] += frames.vectors[f][j];
            }
            ++count;
            ++f;
        }
        if (count > 0) {
            for (double& c : sum) {
                c /= static_cast<double>(count);
            }
            out.rows[i] = sum;
            previous = sum;
            have_previous = true;
        } else {
            out.rows[i] = have_previous ? previous : Chroma{};
        }
    }
    return out;
}

ChromaSequence sqrt_compress_normalize(const ChromaSequence& raw) {
    ChromaSequence out;
    out.rows.reserve(raw.size());
    for (const auto& row : raw.rows) {
        Chroma compressed;
        for (std::size_t j = 0; j < kChromaBins; ++j) {
            if (!(row[j] >= 0.0) || !std::isfinite(row[j])) {
                throw Error("invalid chroma");
            }
            compressed[j] = std::sqrt(row[j]);
        }
        out.rows.push_back(scaled_to_unit(compressed));
    }
    return out;
}

ChromaSequence normalize_rows(const ChromaSequence& seq) {
    ChromaSequence out;
    out.rows.reserve(seq.size());
    for (const auto& row : seq.rows) {
        out.rows.push_back(scaled_to_unit(row));
    }
    return out;
}

SummaryVector summary(const ChromaSequence& seq) {
    SummaryVector h{};
    if (seq.empty()) {
        return h;
    }
    for (const auto& row : seq.rows) {
        for (std::size_t j = 0; j < kChromaBins; ++j) {
            h[j] += row[j];
        }
    }
    for (double& c : h) {
        c /= static_cast<double>(seq.size());
    }
    return h;
}

Chroma circshift(const Chroma& v, int shift) {
    constexpr int n = static_cast<int>(kChromaBins);
    const int s = ((shift % n) + n) % n;
    Chroma out;
    for (int j = 0; j < n; ++j) {
        out[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>((j - s + n) % n)];
    }
    return out;
}

int oti(const SummaryVector& hx, const SummaryVector& hy) {
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(kChromaBins); ++i) {
        const Chroma shifted = circshift(hy, i);
        const double score = std::inner_product(hx.begin(), hx.end(), shifted.begin(), 0.0);
        if (score > best_score) {
            best_score = score;
            best = i;
        }
    }
    return best;
}

ChromaSequence transpose(const ChromaSequence& seq, int shift) {
    ChromaSequence out;
    out.rows.reserve(seq.size());
    for (const auto& row : seq.rows) {
        out.rows.push_back(circshift(row, shift));
    }
    return out;
}

}  // namespace simscore
