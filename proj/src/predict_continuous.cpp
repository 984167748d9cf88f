#include "simscore/predict_continuous.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "simscore/predict_discrete.hpp"

namespace simscore {

namespace {

constexpr double kVarianceFloor = 1e-12;

// Embedded vectors centred and scaled to unit norm, so that a dot product
// is the Pearson correlation. Zero-variance vectors become all-zero.
struct StandardizedEmbedding {
    std::size_t width = 0;
    std::size_t first_index = 0;
    std::vector<double> values;

    const double* row(std::size_t r) const { return values.data() + (r - first_index) * width; }
};

bool standardize(std::span<const double> v, std::span<double> out) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    double raw = 0.0;
    for (double a : v) {
        mean += a;
        raw += a * a;
    }
    mean /= n;
    double ss = 0.0;
    for (double a : v) {
        ss += (a - mean) * (a - mean);
    }
    // Rounding leaves a tiny residual for constant vectors; treat it as zero.
    if (ss <= 1e-20 * raw || ss == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        return false;
    }
    const double scale = 1.0 / std::sqrt(ss);
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = (v[i] - mean) * scale;
    }
    return true;
}

StandardizedEmbedding standardized(const EmbeddedSeries& e) {
    StandardizedEmbedding s;
    s.width = e.width;
    s.first_index = e.first_index;
    s.values.resize(e.values.size());
    for (std::size_t i = 0; i < e.count(); ++i) {
        standardize(e.at(e.first_index + i), {s.values.data() + i * e.width, e.width});
    }
    return s;
}

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

std::size_t last_target_time(std::size_t length, const EmbeddingConfig& cfg) {
    return length - 1 - static_cast<std::size_t>(cfg.horizon);
}

// Shared scan for cross- and self-prediction; `radius` < 0 disables the
// exclusion window.
Predictions nearest_neighbour_forecast(const ChromaSequence& x, const ChromaSequence& y,
                                       const EmbeddingConfig& cfg, long radius) {
    const EmbeddedSeries ex = embed(x, cfg);
    const EmbeddedSeries ey = embed(y, cfg);
    const StandardizedEmbedding sx = standardized(ex);
    const StandardizedEmbedding sy = standardized(ey);

    const std::size_t first = cfg.span();
    const std::size_t last_t = last_target_time(x.size(), cfg);
    const std::size_t last_k = last_target_time(y.size(), cfg);
    const auto h = static_cast<std::size_t>(cfg.horizon);

    Predictions p;
    for (std::size_t t = first; t <= last_t; ++t) {
        const double* target = sx.row(t);
        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_k = 0;
        bool found = false;
        for (std::size_t k = first; k <= last_k; ++k) {
            if (radius >= 0) {
                const long gap = static_cast<long>(k) - static_cast<long>(t);
                if (std::abs(gap) <= radius) {
                    continue;
                }
            }
            const double c = dot(sy.row(k), target, sx.width);
            if (c > best) {
                best = c;
                best_k = k;
                found = true;
            }
        }
        if (!found) {
            throw Error(radius >= 0 ? "exclusion radius exhausts candidates" : "no valid candidates");
        }
        p.times.push_back(t);
        p.neighbors.push_back(best_k);
        p.targets.push_back(t + h);
        p.values.push_back(y[best_k + h]);
    }
    return p;
}

}  // namespace

void validate(const EmbeddingConfig& cfg) {
    if (cfg.dimension < 1 || cfg.delay < 1 || cfg.horizon < 1) {
        throw Error("embedding dimension, delay and horizon must be positive");
    }
    if (cfg.exclusion_radius < 0) {
        throw Error("exclusion radius must be nonnegative");
    }
}

std::string grid_warning(const EmbeddingConfig& cfg) {
    const bool on_grid = (cfg.dimension == 1 || cfg.dimension == 2 || cfg.dimension == 4) &&
                         (cfg.delay == 1 || cfg.delay == 2 || cfg.delay == 4 || cfg.delay == 6) &&
                         (cfg.horizon == 1 || cfg.horizon == 4) && cfg.exclusion_radius == 8;
    if (on_grid) {
        return {};
    }
    return "embedding parameters outside the evaluated grid (d in {1,2,4}, tau in {1,2,4,6}, "
           "h in {1,4}, R = 8)";
}

EmbeddedSeries embed(const ChromaSequence& seq, const EmbeddingConfig& cfg) {
    validate(cfg);
    const std::size_t first = cfg.span();
    if (seq.size() <= first + static_cast<std::size_t>(cfg.horizon)) {
        throw Error("insufficient length for embedding");
    }
    EmbeddedSeries e;
    e.width = kChromaBins * static_cast<std::size_t>(cfg.dimension);
    e.first_index = first;
    e.length = seq.size();
    e.values.reserve(e.count() * e.width);
    for (std::size_t r = first; r < seq.size(); ++r) {
        for (int j = 0; j < cfg.dimension; ++j) {
            const Chroma& row = seq[r - static_cast<std::size_t>(j * cfg.delay)];
            e.values.insert(e.values.end(), row.begin(), row.end());
        }
    }
    return e;
}

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw Error("dimension mismatch");
    }
    std::vector<double> za(a.size());
    std::vector<double> zb(b.size());
    if (!standardize(a, za) || !standardize(b, zb)) {
        return 0.0;
    }
    return dot(za.data(), zb.data(), za.size());
}

Predictions cross_predict(const ChromaSequence& x, const ChromaSequence& y, const EmbeddingConfig& cfg) {
    validate(cfg);
    if (y.size() <= cfg.span() + static_cast<std::size_t>(cfg.horizon)) {
        throw Error("no valid candidates");
    }
    return nearest_neighbour_forecast(x, y, cfg, -1);
}

Predictions self_predict(const ChromaSequence& x, const EmbeddingConfig& cfg) {
    validate(cfg);
    return nearest_neighbour_forecast(x, x, cfg, cfg.exclusion_radius);
}

double mean_squared_error(const ChromaSequence& x, const Predictions& p) {
    if (p.size() == 0) {
        throw Error("no predictions");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Chroma& actual = x[p.targets[i]];
        for (std::size_t j = 0; j < kChromaBins; ++j) {
            const double d = p.values[i][j] - actual[j];
            total += d * d;
        }
    }
    return total / static_cast<double>(p.size() * kChromaBins);
}

ConditionalPredictions conditional_predict(const ChromaSequence& x, const ChromaSequence& y,
                                           const EmbeddingConfig& cfg) {
    const Predictions cross = cross_predict(x, y, cfg);
    const Predictions self = self_predict(x, cfg);

    // Both forecasts span t in [(d-1)tau, N-1-h], so targets coincide.
    if (cross.targets != self.targets) {
        throw Error("cross and self forecasts cover different targets");
    }

    ConditionalPredictions out;
    out.mse_cross = mean_squared_error(x, cross);
    out.mse_self = mean_squared_error(x, self);
    const double denominator = out.mse_self + out.mse_cross;
    out.alpha = denominator > 0.0 ? out.mse_self / denominator : 0.5;

    out.predictions = self;
    for (std::size_t i = 0; i < self.size(); ++i) {
        for (std::size_t c = 0; c < kChromaBins; ++c) {
            out.predictions.values[i][c] =
                out.alpha * cross.values[i][c] + (1.0 - out.alpha) * self.values[i][c];
        }
    }
    return out;
}

Chroma component_variances(const ChromaSequence& x) {
    Chroma mean{};
    Chroma var{};
    if (x.empty()) {
        var.fill(kVarianceFloor);
        return var;
    }
    const double n = static_cast<double>(x.size());
    for (const auto& row : x.rows) {
        for (std::size_t j = 0; j < kChromaBins; ++j) {
            mean[j] += row[j];
        }
    }
    for (double& m : mean) {
        m /= n;
    }
    for (const auto& row : x.rows) {
        for (std::size_t j = 0; j < kChromaBins; ++j) {
            var[j] += (row[j] - mean[j]) * (row[j] - mean[j]);
        }
    }
    for (double& v : var) {
        v = std::max(v / n, kVarianceFloor);
    }
    return var;
}

PredictionErrorStats error_stats(const ChromaSequence& x, const Predictions& p) {
    if (p.size() < 2) {
        throw Error("at least two predictions required");
    }
    PredictionErrorStats stats;
    stats.scales = component_variances(x);
    stats.errors.reserve(p.size());
    Chroma mean{};
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Chroma& actual = x[p.targets[i]];
        Chroma e;
        for (std::size_t j = 0; j < kChromaBins; ++j) {
            e[j] = (p.values[i][j] - actual[j]) / stats.scales[j];
            mean[j] += e[j];
        }
        stats.errors.push_back(e);
    }
    const double n = static_cast<double>(p.size());
    for (double& m : mean) {
        m /= n;
    }

    stats.covariance.assign(kChromaBins * kChromaBins, 0.0);
    for (const auto& e : stats.errors) {
        for (std::size_t a = 0; a < kChromaBins; ++a) {
            for (std::size_t b = a; b < kChromaBins; ++b) {
                stats.covariance[a * kChromaBins + b] += (e[a] - mean[a]) * (e[b] - mean[b]);
            }
        }
    }
    for (std::size_t a = 0; a < kChromaBins; ++a) {
        for (std::size_t b = a; b < kChromaBins; ++b) {
            const double c = stats.covariance[a * kChromaBins + b] / (n - 1.0);
            stats.covariance[a * kChromaBins + b] = c;
            stats.covariance[b * kChromaBins + a] = c;
        }
    }
    return stats;
}

double gaussian_entropy_bits(std::span<const double> covariance, std::size_t k) {
    if (covariance.size() != k * k || k == 0) {
        throw Error("covariance must be k x k");
    }
    Eigen::MatrixXd sigma(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            sigma(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = covariance[a * k + b];
        }
    }
    sigma.diagonal().array() += kCovarianceRegularizer;

    double log2_det = 0.0;
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() == Eigen::Success) {
        log2_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log2().sum();
    } else {
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sigma);
        log2_det = lu.matrixLU().diagonal().array().abs().log2().sum();
    }
    const double log2_2pie = std::log2(2.0 * std::numbers::pi * std::numbers::e);
    return 0.5 * (static_cast<double>(k) * log2_2pie + log2_det);
}

EntropyEstimate gaussian_entropy(const PredictionErrorStats& stats, EntropyMethod method) {
    return {gaussian_entropy_bits(stats.covariance, kChromaBins), method};
}

EntropyEstimate self_entropy(const ChromaSequence& x, const EmbeddingConfig& cfg) {
    return gaussian_entropy(error_stats(x, self_predict(x, cfg)), EntropyMethod::Self);
}

EntropyEstimate cross_entropy(const ChromaSequence& x, const ChromaSequence& y, const EmbeddingConfig& cfg) {
    return gaussian_entropy(error_stats(x, cross_predict(x, y, cfg)), EntropyMethod::Cross);
}

EntropyEstimate conditional_entropy(const ChromaSequence& x, const ChromaSequence& y,
                                    const EmbeddingConfig& cfg) {
    return gaussian_entropy(error_stats(x, conditional_predict(x, y, cfg).predictions),
                            EntropyMethod::Conditional);
}

double nid_from_entropies(double cond_xy, double cond_yx, double self_x, double self_y) {
    const double denominator = std::max(self_x, self_y);
    if (std::abs(denominator) < 1e-9) {
        throw Error("degenerate denominator");
    }
    return std::max(cond_xy, cond_yx) / denominator;
}

double nid_continuous(const ChromaSequence& x, const ChromaSequence& y, const EmbeddingConfig& cfg) {
    return nid_continuous(x, y, cfg, self_entropy(x, cfg).bits, self_entropy(y, cfg).bits);
}

double nid_continuous(const ChromaSequence& x, const ChromaSequence& y, const EmbeddingConfig& cfg,
                      double self_x, double self_y) {
    return nid_from_entropies(conditional_entropy(x, y, cfg).bits, conditional_entropy(y, x, cfg).bits,
                              self_x, self_y);
}

double d_cross_continuous(const ChromaSequence& x, const ChromaSequence& y, const EmbeddingConfig& cfg) {
    return d_cross_continuous(x, y, cfg, self_entropy(x, cfg).bits, self_entropy(y, cfg).bits);
}

double d_cross_continuous(const ChromaSequence& x, const ChromaSequence& y, const EmbeddingConfig& cfg,
                          double self_x, double self_y) {
    return cross_entropy_ratio(cross_entropy(x, y, cfg).bits, cross_entropy(y, x, cfg).bits, self_x,
                               self_y);
}

double normalized_mse(const ChromaSequence& x, const Predictions& p) {
    if (p.size() == 0) {
        throw Error("no predictions");
    }
    const Chroma var = component_variances(x);
    Chroma mse{};
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Chroma& actual = x[p.targets[i]];
        for (std::size_t j = 0; j < kChromaBins; ++j) {
            const double d = p.values[i][j] - actual[j];
            mse[j] += d * d;
        }
    }
    double total = 0.0;
    for (std::size_t j = 0; j < kChromaBins; ++j) {
        total += mse[j] / static_cast<double>(p.size()) / var[j];
    }
    return total / static_cast<double>(kChromaBins);
}

double nmse_cross(const ChromaSequence& x, const ChromaSequence& y, const EmbeddingConfig& cfg) {
    return 0.5 * (normalized_mse(x, cross_predict(x, y, cfg)) + normalized_mse(y, cross_predict(y, x, cfg)));
}

}  // namespace simscore
