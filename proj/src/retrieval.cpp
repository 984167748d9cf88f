#include "simscore/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "simscore/features.hpp"
#include "simscore/parallel.hpp"

namespace simscore {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double l1(const Histogram& a, const Histogram& b) {
    if (a.size() != b.size()) {
        throw Error("histogram size mismatch");
    }
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        d += std::abs(a.weights[k] - b.weights[k]);
    }
    return d;
}

}  // namespace

DistanceTable::DistanceTable(std::vector<std::string> query_ids, std::vector<std::string> candidate_ids,
                             double fill)
    : queries(std::move(query_ids)), candidates(std::move(candidate_ids)),
      values(queries.size() * candidates.size(), fill) {}

std::vector<std::size_t> DistanceTable::ranking(std::size_t q) const {
    std::vector<std::size_t> order;
    order.reserve(cols());
    for (std::size_t c = 0; c < cols(); ++c) {
        if (!excluded(q, c)) {
            order.push_back(c);
        }
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (at(q, a) != at(q, b)) {
            return at(q, a) < at(q, b);
        }
        return candidates[a] < candidates[b];
    });
    return order;
}

std::vector<double> DistanceTable::row_ranks(std::size_t q) const {
    std::vector<std::size_t> cells;
    std::vector<double> row;
    for (std::size_t c = 0; c < cols(); ++c) {
        if (!excluded(q, c)) {
            cells.push_back(c);
            row.push_back(at(q, c));
        }
    }
    const std::vector<double> r = average_ranks(row);
    std::vector<double> out(cols(), 0.0);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out[cells[i]] = r[i];
    }
    return out;
}

std::vector<double> average_ranks(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = r;
        }
        i = j + 1;
    }
    return ranks;
}

std::vector<std::string> filter_stage(const TrackStore& store, const std::string& query_id,
                                      std::size_t filter_size) {
    const Track& query = store.find(query_id);
    if (!store.has_symbols()) {
        throw Error("filter stage requires a codebook");
    }
    if (filter_size == 0) {
        throw Error("filter size must be positive");
    }
    struct Scored {
        double distance;
        const std::string* id;
    };
    std::vector<Scored> scored;
    scored.reserve(store.size());
    for (const Track& t : store.tracks()) {
        if (t.id == query.id) {
            continue;
        }
        double best = kInf;
        for (const Histogram& h : query.rotation_histograms) {
            best = std::min(best, l1(h, t.rotation_histograms[0]));
        }
        scored.push_back({best, &t.id});
    }
    const std::size_t keep = std::min(filter_size, scored.size());
    const auto less = [](const Scored& a, const Scored& b) {
        return a.distance != b.distance ? a.distance < b.distance : *a.id < *b.id;
    };
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(), less);
    std::vector<std::string> out;
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        out.push_back(*scored[i].id);
    }
    return out;
}

std::vector<double> refine(const TrackStore& store, const std::string& query_id,
                           const std::vector<std::string>& shortlist, const Measure& measure) {
    if (shortlist.empty()) {
        throw Error("empty shortlist");
    }
    const std::size_t q = store.index_of(query_id);
    std::vector<double> row(store.size(), kInf);
    for (const std::string& id : shortlist) {
        const std::size_t c = store.index_of(id);
        if (c == q) {
            continue;
        }
        const int shift = oti(store[q].summary, store[c].summary);
        row[c] = measure.distance(store, q, c, shift);
    }
    return row;
}

namespace {

DistanceTable run_queries(const TrackStore& store, const Measure& measure, bool filter, std::size_t filter_size,
                          int jobs) {
    const std::vector<std::string> ids = store.ids();
    DistanceTable table(ids, ids, kInf);
    parallel_for(store.size(), jobs, [&](std::size_t q) {
        std::vector<std::string> shortlist;
        if (filter) {
            shortlist = filter_stage(store, ids[q], filter_size);
        } else {
            for (std::size_t c = 0; c < ids.size(); ++c) {
                if (c != q) {
                    shortlist.push_back(ids[c]);
                }
            }
        }
        if (shortlist.empty()) {
            return;
        }
        const std::vector<double> row = refine(store, ids[q], shortlist, measure);
        std::copy(row.begin(), row.end(), table.values.begin() + static_cast<std::ptrdiff_t>(q * table.cols()));
    });
    return table;
}

}  // namespace

DistanceTable retrieve(const TrackStore& store, const Measure& measure, std::size_t filter_size, int jobs) {
    return run_queries(store, measure, store.has_symbols(), filter_size, jobs);
}

DistanceTable pairwise(const TrackStore& store, const Measure& measure, int jobs) {
    return run_queries(store, measure, false, 0, jobs);
}

DistanceTable normalize_distances(const DistanceTable& table) {
    DistanceTable out = table;
    for (std::size_t c = 0; c < table.cols(); ++c) {
        double sum = 0.0;
        std::size_t n = 0;
        for (std::size_t q = 0; q < table.rows(); ++q) {
            if (!table.excluded(q, c) && std::isfinite(table.at(q, c))) {
                sum += table.at(q, c);
                ++n;
            }
        }
        if (n < 2) {
            continue;
        }
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t q = 0; q < table.rows(); ++q) {
            if (!table.excluded(q, c) && std::isfinite(table.at(q, c))) {
                ss += (table.at(q, c) - mean) * (table.at(q, c) - mean);
            }
        }
        const double sigma = std::sqrt(ss / static_cast<double>(n));
        for (std::size_t q = 0; q < table.rows(); ++q) {
            if (!table.excluded(q, c) && std::isfinite(table.at(q, c))) {
                const double centred = table.at(q, c) - mean;
                out.at(q, c) = sigma < 1e-12 ? centred : centred / sigma;
            }
        }
    }
    return out;
}

DistanceTable inverse_rank(const DistanceTable& table) {
    DistanceTable out = table;
    for (std::size_t q = 0; q < table.rows(); ++q) {
        const std::vector<double> ranks = table.row_ranks(q);
        for (std::size_t c = 0; c < table.cols(); ++c) {
            if (!table.excluded(q, c)) {
                out.at(q, c) = 1.0 - 1.0 / ranks[c];
            }
        }
    }
    return out;
}

DistanceTable combine(const DistanceTable& a, const DistanceTable& b, double beta) {
    if (!a.same_layout(b)) {
        throw Error("index mismatch");
    }
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw Error("beta must be in [0, 1]");
    }
    DistanceTable out = a;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double hi = std::max(a.values[i], b.values[i]);
        const double lo = std::min(a.values[i], b.values[i]);
        out.values[i] = hi == lo ? hi : hi * beta + lo * (1.0 - beta);
    }
    return out;
}

DistanceTable random_baseline(const TrackStore& store, std::uint64_t seed) {
    const std::vector<std::string> ids = store.ids();
    DistanceTable table(ids, ids);
    for (std::size_t q = 0; q < ids.size(); ++q) {
        for (std::size_t c = 0; c < ids.size(); ++c) {
            table.at(q, c) = random_distance(seed, q, c);
        }
    }
    return table;
}

double crosscorr_baseline(const ChromaSequence& x, const ChromaSequence& y) {
    if (x.empty() || y.empty()) {
        throw Error("empty sequence");
    }
    const auto centred = [](const ChromaSequence& s) {
        double mean = 0.0;
        for (const Chroma& r : s.rows) {
            for (double v : r) {
                mean += v;
            }
        }
        mean /= static_cast<double>(s.size() * kChromaBins);
        ChromaSequence out = s;
        for (Chroma& r : out.rows) {
            for (double& v : r) {
                v -= mean;
            }
        }
        return out;
    };
    const auto prefix_energy = [](const ChromaSequence& s) {
        std::vector<double> p(s.size() + 1, 0.0);
        for (std::size_t i = 0; i < s.size(); ++i) {
            double e = 0.0;
            for (double v : s[i]) {
                e += v * v;
            }
            p[i + 1] = p[i] + e;
        }
        return p;
    };

    const ChromaSequence cx = centred(x);
    const ChromaSequence cy = centred(y);
    const std::vector<double> ex = prefix_energy(cx);
    const std::vector<double> ey = prefix_energy(cy);
    const auto n = static_cast<long>(cx.size());
    const auto m = static_cast<long>(cy.size());
    const long min_overlap = std::max(1L, (std::min(n, m) + 1) / 2);

    double best = -kInf;
    for (int s = 0; s < static_cast<int>(kChromaBins); ++s) {
        const ChromaSequence ty = transpose(cy, s);
        // Row i of x meets row i + lag of y.
        for (long lag = -(n - 1); lag <= m - 1; ++lag) {
            const long lo = std::max(0L, -lag);
            const long hi = std::min(n, m - lag);
            if (hi - lo < min_overlap) {
                continue;
            }
            const double nx = ex[static_cast<std::size_t>(hi)] - ex[static_cast<std::size_t>(lo)];
            const double ny = ey[static_cast<std::size_t>(hi + lag)] - ey[static_cast<std::size_t>(lo + lag)];
            if (nx <= 1e-24 || ny <= 1e-24) {
                continue;
            }
            double dot = 0.0;
            for (long i = lo; i < hi; ++i) {
                const Chroma& a = cx[static_cast<std::size_t>(i)];
                const Chroma& b = ty[static_cast<std::size_t>(i + lag)];
                for (std::size_t k = 0; k < kChromaBins; ++k) {
                    dot += a[k] * b[k];
                }
            }
            best = std::max(best, dot / std::sqrt(nx * ny));
        }
    }
    if (best == -kInf) {
        return 1.0;
    }
    return 1.0 - best;
}

}  // namespace simscore
