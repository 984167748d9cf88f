#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "simscore/features.hpp"
#include "simscore/predict_continuous.hpp"
#include "simscore/predict_discrete.hpp"
#include "simscore/synthetic.hpp"

using namespace simscore;

namespace {

EmbeddingConfig config(int d, int tau, int h, int radius = 8) {
    EmbeddingConfig c;
    c.dimension = d;
    c.delay = tau;
    c.horizon = h;
    c.exclusion_radius = radius;
    return c;
}

// Distinct random rows repeated with the given period.
ChromaSequence periodic(std::size_t n, std::size_t period, std::mt19937_64& rng) {
    const ChromaSequence base = oracle::random_sequence(period, rng);
    ChromaSequence s;
    for (std::size_t i = 0; i < n; ++i) {
        s.rows.push_back(base[i % period]);
    }
    return s;
}

ChromaSequence scale_component(ChromaSequence s, std::size_t component, double c) {
    for (auto& row : s.rows) {
        row[component] *= c;
    }
    return s;
}

std::vector<double> flat(const Chroma& c) { return {c.begin(), c.end()}; }

const double kLog2PiE = std::log2(2 * M_PI * std::exp(1.0));

}  // namespace

TEST_CASE("embedding configuration validation and grid warnings") {
    CHECK_NOTHROW(validate(config(4, 6, 4)));
    CHECK_THROWS(validate(config(0, 1, 1)));
    CHECK_THROWS(validate(config(1, 0, 1)));
    CHECK_THROWS(validate(config(1, 1, 0)));
    CHECK_THROWS(validate(config(1, 1, 1, -1)));
    CHECK(grid_warning(config(2, 4, 1)).empty());
    CHECK(!grid_warning(config(3, 1, 1)).empty());
    CHECK(!grid_warning(config(1, 1, 1, 5)).empty());
}

TEST_CASE("embed with d = 1 copies the rows and ignores tau") {
    std::mt19937_64 rng(1);
    const ChromaSequence s = oracle::random_sequence(10, rng);
    const EmbeddedSeries e = embed(s, config(1, 7, 1));
    CHECK(e.count() == 10);
    for (std::size_t r = 0; r < 10; ++r) {
        CHECK(flat(s[r]) == std::vector<double>(e.at(r).begin(), e.at(r).end()));
    }
}

TEST_CASE("embed with d = 2 stacks the current row over the previous one") {
    std::mt19937_64 rng(2);
    const ChromaSequence s = oracle::random_sequence(3, rng);
    const EmbeddedSeries e = embed(s, config(2, 1, 1));
    REQUIRE(e.count() == 2);
    std::vector<double> ba = flat(s[1]);
    ba.insert(ba.end(), s[0].begin(), s[0].end());
    std::vector<double> cb = flat(s[2]);
    cb.insert(cb.end(), s[1].begin(), s[1].end());
    CHECK(std::vector<double>(e.at(1).begin(), e.at(1).end()) == ba);
    CHECK(std::vector<double>(e.at(2).begin(), e.at(2).end()) == cb);
}

TEST_CASE("embed rejects sequences that are too short") {
    std::mt19937_64 rng(3);
    CHECK_THROWS_WITH(embed(oracle::random_sequence(19, rng), config(4, 6, 1)), "insufficient length for embedding");
    CHECK_NOTHROW(embed(oracle::random_sequence(20, rng), config(4, 6, 1)));
}

TEST_CASE("embedded blocks project back onto the original rows") {
    std::mt19937_64 rng(4);
    const ChromaSequence s = oracle::random_sequence(40, rng);
    for (int d : {1, 2, 4}) {
        for (int tau : {1, 2, 4, 6}) {
            const EmbeddedSeries e = embed(s, config(d, tau, 1));
            CHECK(e.count() == 40 - static_cast<std::size_t>((d - 1) * tau));
            for (std::size_t r = e.first_index; r < 40; ++r) {
                const auto v = e.at(r);
                for (int j = 0; j < d; ++j) {
                    const Chroma& row = s[r - static_cast<std::size_t>(j * tau)];
                    CHECK(std::equal(row.begin(), row.end(), v.begin() + 12 * j));
                }
            }
        }
    }
}

TEST_CASE("pearson matches the textbook formula") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(24), b(24);
        for (std::size_t i = 0; i < 24; ++i) {
            a[i] = u(rng);
            b[i] = u(rng);
        }
        CHECK(pearson(a, b) == doctest::Approx(oracle::pearson(a, b)).epsilon(1e-12));
    }
    const std::vector<double> flat_row(12, 0.3);
    const std::vector<double> other(12, 0.1);
    CHECK(pearson(flat_row, other) == 0.0);
}

TEST_CASE("cross_predict matches a brute-force correlation scan") {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<std::size_t> len(20, 64);
    for (int trial = 0; trial < 30; ++trial) {
        const EmbeddingConfig cfg = config(1 + trial % 4, 1 + trial % 3, 1 + 3 * (trial % 2));
        const ChromaSequence x = oracle::random_sequence(len(rng), rng);
        const ChromaSequence y = oracle::random_sequence(len(rng), rng);
        const Predictions p = cross_predict(x, y, cfg);
        const auto expected = oracle::argmax_neighbors(x, y, cfg.dimension, cfg.delay, cfg.horizon, false, 0);
        CHECK(p.neighbors == expected);
        REQUIRE(p.size() == expected.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(p.targets[i] == p.times[i] + static_cast<std::size_t>(cfg.horizon));
            CHECK(p.values[i] == y[expected[i] + static_cast<std::size_t>(cfg.horizon)]);
        }
    }
}

TEST_CASE("cross_predict on repeated rows breaks ties towards the smallest index") {
    std::mt19937_64 rng(7);
    const ChromaSequence pool = oracle::random_sequence(3, rng);
    std::uniform_int_distribution<std::size_t> pick(0, 2);
    for (int trial = 0; trial < 10; ++trial) {
        ChromaSequence x, y;
        for (int i = 0; i < 40; ++i) {
            x.rows.push_back(pool[pick(rng)]);
            y.rows.push_back(pool[pick(rng)]);
        }
        const EmbeddingConfig cfg = config(1 + trial % 2, 1, 1);
        CHECK(cross_predict(x, y, cfg).neighbors ==
              oracle::argmax_neighbors(x, y, cfg.dimension, cfg.delay, cfg.horizon, false, 0));
    }
}

TEST_CASE("cross_predict of a sequence with itself matches every row") {
    std::mt19937_64 rng(8);
    const ChromaSequence x = oracle::random_sequence(50, rng);
    const Predictions p = cross_predict(x, x, config(2, 1, 1));
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(p.neighbors[i] == p.times[i]);
        CHECK(p.values[i] == x[p.times[i] + 1]);
    }
}

TEST_CASE("cross_predict against a time-shifted copy") {
    std::mt19937_64 rng(9);
    const ChromaSequence x = oracle::random_sequence(60, rng);
    ChromaSequence y;
    y.rows.assign(x.rows.begin() + 5, x.rows.end());
    const EmbeddingConfig cfg = config(4, 1, 1);
    const Predictions p = cross_predict(x, y, cfg);
    CHECK(p.neighbors == oracle::argmax_neighbors(x, y, 4, 1, 1, false, 0));
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.times[i] >= 8 && p.times[i] + 1 < 60) {
            CHECK(p.neighbors[i] == p.times[i] - 5);
        }
    }
}

TEST_CASE("cross_predict with constant rows in y picks the first candidate") {
    std::mt19937_64 rng(10);
    const ChromaSequence x = oracle::random_sequence(30, rng);
    ChromaSequence y;
    Chroma c;
    c.fill(0.2);
    y.rows.assign(25, c);
    const Predictions p = cross_predict(x, y, config(2, 3, 1));
    for (std::size_t q : p.neighbors) {
        CHECK(q == 3);
    }
    CHECK_THROWS(cross_predict(x, oracle::random_sequence(4, rng), config(2, 3, 1)));
}

TEST_CASE("self_predict recovers a periodic sequence") {
    std::mt19937_64 rng(11);
    const ChromaSequence x = periodic(60, 10, rng);
    const Predictions p = self_predict(x, config(1, 1, 1, 8));
    for (std::size_t i = 0; i < p.size(); ++i) {
        const std::size_t t = p.times[i];
        CHECK(p.values[i] == x[t + 1]);
        const std::size_t gap = p.neighbors[i] > t ? p.neighbors[i] - t : t - p.neighbors[i];
        CHECK(gap > 8);
        CHECK(gap % 10 == 0);
    }
}

TEST_CASE("self_predict exclusion radius") {
    std::mt19937_64 rng(12);
    const ChromaSequence x = oracle::random_sequence(30, rng);
    CHECK_THROWS_WITH(self_predict(x, config(1, 1, 1, 30)), "exclusion radius exhausts candidates");
    CHECK_THROWS(self_predict(x, config(1, 1, 1, 40)));
    for (int radius : {0, 3, 8}) {
        const EmbeddingConfig cfg = config(2, 2, 1, radius);
        const Predictions p = self_predict(x, cfg);
        CHECK(p.neighbors == oracle::argmax_neighbors(x, x, 2, 2, 1, true, radius));
        if (radius == 0) {
            for (std::size_t i = 0; i < p.size(); ++i) {
                CHECK(p.neighbors[i] != p.times[i]);
            }
        }
    }
}

TEST_CASE("conditional_predict recombines the two forecasts") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const ChromaSequence x = oracle::random_sequence(50, rng);
        const ChromaSequence y = oracle::random_sequence(45, rng);
        const EmbeddingConfig cfg = config(2, 1, 1, 3);
        const Predictions cross = cross_predict(x, y, cfg);
        const Predictions self = self_predict(x, cfg);
        const double ms = mean_squared_error(x, self);
        const double mc = mean_squared_error(x, cross);
        const ConditionalPredictions c = conditional_predict(x, y, cfg);
        CHECK(c.mse_self == doctest::Approx(ms).epsilon(1e-14));
        CHECK(c.mse_cross == doctest::Approx(mc).epsilon(1e-14));
        CHECK(c.alpha == doctest::Approx(ms / (ms + mc)).epsilon(1e-14));
        REQUIRE(c.predictions.size() == self.size());
        for (std::size_t i = 0; i < self.size(); ++i) {
            CHECK(c.predictions.targets[i] == self.targets[i]);
            for (std::size_t k = 0; k < kChromaBins; ++k) {
                const double hand = c.alpha * cross.values[i][k] + (1 - c.alpha) * self.values[i][k];
                CHECK(c.predictions.values[i][k] == doctest::Approx(hand).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("conditional_predict with perfect self-prediction uses the self forecast") {
    std::mt19937_64 rng(14);
    const ChromaSequence x = periodic(60, 10, rng);
    const ChromaSequence y = oracle::random_sequence(60, rng);
    const EmbeddingConfig cfg = config(1, 1, 1, 8);
    const ConditionalPredictions c = conditional_predict(x, y, cfg);
    CHECK(c.mse_self == 0.0);
    CHECK(c.alpha == 0.0);
    CHECK(c.predictions.values == self_predict(x, cfg).values);
}

TEST_CASE("conditional_predict falls back to the midpoint when both errors vanish") {
    std::mt19937_64 rng(15);
    const ChromaSequence x = periodic(60, 10, rng);
    const ConditionalPredictions c = conditional_predict(x, x, config(1, 1, 1, 8));
    CHECK(c.mse_self == 0.0);
    CHECK(c.mse_cross == 0.0);
    CHECK(c.alpha == 0.5);
}

TEST_CASE("error_stats of perfect predictions") {
    std::mt19937_64 rng(16);
    const ChromaSequence x = oracle::random_sequence(40, rng);
    const PredictionErrorStats st = error_stats(x, cross_predict(x, x, config(1, 1, 1)));
    for (double v : st.covariance) {
        CHECK(v == 0.0);
    }
    CHECK(st.covariance.size() == 144);
}

TEST_CASE("error_stats single component hand covariance") {
    // Component 0 takes 0, 2, 0, 2: population variance 1. Residuals +1, -1.
    ChromaSequence x;
    for (int i = 0; i < 4; ++i) {
        Chroma r;
        r.fill(0.5);
        r[0] = (i % 2) * 2.0;
        x.rows.push_back(r);
    }
    Predictions p;
    p.times = {1, 2};
    p.neighbors = {0, 0};
    p.targets = {2, 3};
    p.values = {x[2], x[3]};
    p.values[0][0] += 1;
    p.values[1][0] -= 1;
    const PredictionErrorStats st = error_stats(x, p);
    CHECK(st.scales[0] == 1.0);
    CHECK(st.scales[1] == 1e-12);
    CHECK(st.errors[0][0] == 1.0);
    CHECK(st.errors[1][0] == -1.0);
    const auto hand = oracle::covariance({{1.0}, {-1.0}});
    CHECK(st.covariance[0] == hand[0]);
    CHECK(st.covariance[0] == 2.0);
    for (std::size_t i = 1; i < 144; ++i) {
        CHECK(st.covariance[i] == 0.0);
    }
}

TEST_CASE("error_stats applies the variance floor to constant components") {
    ChromaSequence x;
    for (int i = 0; i < 6; ++i) {
        Chroma r;
        r.fill(0.25);
        r[3] = i;
        x.rows.push_back(r);
    }
    Predictions p;
    for (std::size_t t = 2; t < 6; ++t) {
        p.times.push_back(t - 1);
        p.neighbors.push_back(0);
        p.targets.push_back(t);
        Chroma v = x[t];
        v[7] += 1e-13 * static_cast<double>(t);
        p.values.push_back(v);
    }
    const PredictionErrorStats st = error_stats(x, p);
    CHECK(st.scales[7] == 1e-12);
    for (double v : st.covariance) {
        CHECK(std::isfinite(v));
    }
    CHECK(std::isfinite(gaussian_entropy(st, EntropyMethod::Self).bits));
    p.values.resize(1);
    p.targets.resize(1);
    p.times.resize(1);
    p.neighbors.resize(1);
    CHECK_THROWS(error_stats(x, p));
}

TEST_CASE("error_stats matches a hand-rolled covariance") {
    std::mt19937_64 rng(17);
    const ChromaSequence x = oracle::random_sequence(50, rng);
    const ChromaSequence y = oracle::random_sequence(50, rng);
    const Predictions p = cross_predict(x, y, config(2, 1, 1));
    const PredictionErrorStats st = error_stats(x, p);
    const Chroma var = component_variances(x);
    std::vector<std::vector<double>> residuals;
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<double> r(12);
        for (std::size_t k = 0; k < 12; ++k) {
            double mean = 0;
            for (const auto& row : x.rows) {
                mean += row[k] / 50;
            }
            double v = 0;
            for (const auto& row : x.rows) {
                v += (row[k] - mean) * (row[k] - mean) / 50;
            }
            CHECK(var[k] == doctest::Approx(v).epsilon(1e-12));
            r[k] = (p.values[i][k] - x[p.targets[i]][k]) / v;
        }
        residuals.push_back(r);
    }
    const auto hand = oracle::covariance(residuals);
    for (std::size_t i = 0; i < 144; ++i) {
        CHECK(st.covariance[i] == doctest::Approx(hand[i]).epsilon(1e-10));
    }
}

TEST_CASE("gaussian entropy closed forms") {
    const std::vector<double> one{1.0};
    CHECK(gaussian_entropy_bits(one, 1) == doctest::Approx(0.5 * kLog2PiE).epsilon(1e-9));
    CHECK(gaussian_entropy_bits(one, 1) == doctest::Approx(2.0471).epsilon(1e-4));
    const std::vector<double> diag{1.0, 0.0, 0.0, 4.0};
    CHECK(gaussian_entropy_bits(diag, 2) == doctest::Approx(kLog2PiE + 1.0).epsilon(1e-9));
    CHECK(gaussian_entropy_bits(diag, 2) == doctest::Approx(5.0942).epsilon(1e-4));
    const std::vector<double> zero(144, 0.0);
    const double z = gaussian_entropy_bits(zero, 12);
    CHECK(std::isfinite(z));
    CHECK(z == doctest::Approx(6.0 * std::log2(2 * M_PI * std::exp(1.0) * 1e-9)).epsilon(1e-9));
    CHECK(z < -100);
}

TEST_CASE("gaussian entropy is invariant under rotation of the residuals") {
    std::mt19937_64 rng(18);
    std::normal_distribution<double> n(0, 1);
    std::uniform_real_distribution<double> angle(0, 2 * M_PI);
    std::uniform_int_distribution<std::size_t> axis(0, 11);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<double>> rows(80, std::vector<double>(12));
        for (auto& r : rows) {
            for (std::size_t k = 0; k < 12; ++k) {
                r[k] = n(rng) * (1.0 + static_cast<double>(k) / 4);
            }
        }
        std::vector<std::vector<double>> rotated = rows;
        // A product of random Givens rotations is orthogonal.
        for (int g = 0; g < 40; ++g) {
            const std::size_t a = axis(rng);
            std::size_t b = axis(rng);
            if (a == b) {
                b = (a + 1) % 12;
            }
            const double th = angle(rng);
            for (auto& r : rotated) {
                const double u = r[a], v = r[b];
                r[a] = std::cos(th) * u - std::sin(th) * v;
                r[b] = std::sin(th) * u + std::cos(th) * v;
            }
        }
        const double h0 = gaussian_entropy_bits(oracle::covariance(rows), 12);
        const double h1 = gaussian_entropy_bits(oracle::covariance(rotated), 12);
        CHECK(std::abs(h0 - h1) < 1e-6);
    }
}

TEST_CASE("entropy estimates carry their method tag") {
    std::mt19937_64 rng(19);
    const ChromaSequence x = oracle::random_sequence(40, rng);
    const ChromaSequence y = oracle::random_sequence(40, rng);
    const EmbeddingConfig cfg = config(1, 1, 1, 3);
    CHECK(self_entropy(x, cfg).method == EntropyMethod::Self);
    CHECK(cross_entropy(x, y, cfg).method == EntropyMethod::Cross);
    CHECK(conditional_entropy(x, y, cfg).method == EntropyMethod::Conditional);
    CHECK(self_entropy(x, cfg).bits == gaussian_entropy(error_stats(x, self_predict(x, cfg)), EntropyMethod::Self).bits);
    CHECK(cross_entropy(x, y, cfg).bits ==
          gaussian_entropy(error_stats(x, cross_predict(x, y, cfg)), EntropyMethod::Cross).bits);
}

TEST_CASE("nid and d_cross formulas on stub entropies") {
    CHECK(nid_from_entropies(2, 3, 4, 5) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK_THROWS(nid_from_entropies(1, 1, 0.0, 1e-10));
    CHECK(cross_entropy_ratio(3, 5, 2, 2) == 2.0);
}

TEST_CASE("nid of a track with itself is below nid with independent noise") {
    std::mt19937_64 rng(20);
    SyntheticSpec spec;
    spec.cover_sets = 1;
    spec.covers_per_set = 1;
    spec.length = 120;
    const EmbeddingConfig cfg = config(2, 1, 1);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        spec.seed = seed;
        const ChromaSequence x = generate_synthetic_tracks(spec).front().chroma;
        const ChromaSequence noise = oracle::random_sequence(120, rng);
        const double same = nid_continuous(x, x, cfg);
        const double other = nid_continuous(x, noise, cfg);
        CHECK(same < other);
        CHECK(nid_continuous(x, noise, cfg) == nid_continuous(noise, x, cfg));
        const double hx = self_entropy(x, cfg).bits;
        const double hn = self_entropy(noise, cfg).bits;
        CHECK(nid_continuous(x, noise, cfg, hx, hn) == other);
    }
}

TEST_CASE("d_cross_continuous is symmetric and uses cached self entropies consistently") {
    std::mt19937_64 rng(21);
    const ChromaSequence x = oracle::random_sequence(50, rng);
    const ChromaSequence y = oracle::random_sequence(60, rng);
    const EmbeddingConfig cfg = config(2, 1, 1, 4);
    const double d = d_cross_continuous(x, y, cfg);
    CHECK(d == d_cross_continuous(y, x, cfg));
    const double hx = self_entropy(x, cfg).bits;
    const double hy = self_entropy(y, cfg).bits;
    CHECK(d == d_cross_continuous(x, y, cfg, hx, hy));
    CHECK(d == doctest::Approx(cross_entropy_ratio(cross_entropy(x, y, cfg).bits, cross_entropy(y, x, cfg).bits, hx, hy))
                   .epsilon(1e-14));
}

TEST_CASE("d_cross_continuous separates aligned synthetic covers") {
    // Covers are pitch-rotated, so the candidate is first transposed by the
    // optimal transposition index, as retrieval does.
    const EmbeddingConfig cfg = config(4, 1, 1);
    int wins = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        SyntheticSpec spec;
        spec.cover_sets = 2;
        spec.covers_per_set = 2;
        spec.jitter = 0.1;
        spec.noise = 0.05;
        spec.seed = trial;
        const auto tracks = generate_synthetic_tracks(spec);
        const ChromaSequence& q = tracks[0].chroma;
        const ChromaSequence cover = transpose(tracks[1].chroma, oti(summary(q), summary(tracks[1].chroma)));
        const ChromaSequence other = transpose(tracks[2].chroma, oti(summary(q), summary(tracks[2].chroma)));
        wins += d_cross_continuous(q, cover, cfg) < d_cross_continuous(q, other, cfg);
    }
    MESSAGE("cover pair closer in " << wins << " of 100 trials");
    CHECK(wins >= 90);
}

TEST_CASE("nmse of perfect predictions is zero") {
    std::mt19937_64 rng(22);
    const ChromaSequence x = oracle::random_sequence(40, rng);
    CHECK(nmse_cross(x, x, config(2, 1, 1)) == 0.0);
}

TEST_CASE("nmse of the component mean is one") {
    std::mt19937_64 rng(23);
    const ChromaSequence x = oracle::random_sequence(4, rng);
    Chroma mean{};
    for (const auto& row : x.rows) {
        for (std::size_t k = 0; k < 12; ++k) {
            mean[k] += row[k] / 4;
        }
    }
    Predictions p;
    for (std::size_t t = 0; t < 4; ++t) {
        p.times.push_back(t);
        p.neighbors.push_back(t);
        p.targets.push_back(t);
        p.values.push_back(mean);
    }
    CHECK(normalized_mse(x, p) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nmse is symmetric") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 5; ++trial) {
        const ChromaSequence x = oracle::random_sequence(40 + static_cast<std::size_t>(trial), rng);
        const ChromaSequence y = oracle::random_sequence(50, rng);
        const EmbeddingConfig cfg = config(1 + trial % 2, 1, 1);
        CHECK(nmse_cross(x, y, cfg) == nmse_cross(y, x, cfg));
        CHECK(nmse_cross(x, y, cfg) ==
              doctest::Approx(0.5 * (normalized_mse(x, cross_predict(x, y, cfg)) +
                                     normalized_mse(y, cross_predict(y, x, cfg))))
                  .epsilon(1e-14));
    }
}

TEST_CASE("scaling one component of both sequences leaves neighbours and nmse unchanged") {
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> scale(0.2, 5.0);
    std::uniform_int_distribution<std::size_t> comp(0, 11);
    int neighbor_changes = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const ChromaSequence x = oracle::random_sequence(50, rng);
        const ChromaSequence y = oracle::random_sequence(50, rng);
        const EmbeddingConfig cfg = config(2, 1, 1);
        const std::size_t k = comp(rng);
        const double c = scale(rng);
        const ChromaSequence sx = scale_component(x, k, c);
        const ChromaSequence sy = scale_component(y, k, c);
        const bool same = cross_predict(x, y, cfg).neighbors == cross_predict(sx, sy, cfg).neighbors;
        CHECK(same);
        neighbor_changes += !same;
        CHECK(std::abs(nmse_cross(x, y, cfg) - nmse_cross(sx, sy, cfg)) <= 1e-9);
    }
    MESSAGE("neighbour choices changed in " << neighbor_changes << " of 10 trials");
}

TEST_CASE("uniform scaling leaves neighbours and nmse unchanged") {
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 10; ++trial) {
        const ChromaSequence x = oracle::random_sequence(50, rng);
        const ChromaSequence y = oracle::random_sequence(50, rng);
        const EmbeddingConfig cfg = config(2, 1, 1);
        ChromaSequence sx = x, sy = y;
        for (std::size_t k = 0; k < 12; ++k) {
            sx = scale_component(sx, k, 3.0);
            sy = scale_component(sy, k, 3.0);
        }
        CHECK(cross_predict(x, y, cfg).neighbors == cross_predict(sx, sy, cfg).neighbors);
        CHECK(std::abs(nmse_cross(x, y, cfg) - nmse_cross(sx, sy, cfg)) <= 1e-9);
    }
}

TEST_CASE("normalized_mse is invariant to scaling a component with fixed neighbours") {
    std::mt19937_64 rng(27);
    const ChromaSequence x = oracle::random_sequence(50, rng);
    const ChromaSequence y = oracle::random_sequence(50, rng);
    const Predictions p = cross_predict(x, y, config(2, 1, 1));
    for (std::size_t k = 0; k < 12; ++k) {
        const double c = 0.5 + static_cast<double>(k);
        Predictions scaled = p;
        for (auto& v : scaled.values) {
            v[k] *= c;
        }
        CHECK(std::abs(normalized_mse(x, p) - normalized_mse(scale_component(x, k, c), scaled)) <= 1e-9);
    }
}
