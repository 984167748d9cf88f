#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "simscore/types.hpp"

namespace simscore {

/// Time-delay embedding and prediction parameters.
struct EmbeddingConfig {
    int dimension = 1;         // d
    int delay = 1;             // tau
    int horizon = 1;           // h
    int exclusion_radius = 8;  // R

    std::size_t span() const { return static_cast<std::size_t>((dimension - 1) * delay); }
};

/// Throws on non-positive d, tau, h or negative R.
void validate(const EmbeddingConfig& cfg);

/// Empty when cfg lies on the evaluated grid d in {1,2,4}, tau in {1,2,4,6},
/// h in {1,4}, R = 8; otherwise a warning message.
std::string grid_warning(const EmbeddingConfig& cfg);

/// Row r (0-based, r >= (d-1)*tau) holds (x_r, x_{r-tau}, ..., x_{r-(d-1)tau})
/// flattened into 12*d values.
struct EmbeddedSeries {
    std::size_t width = 0;        // 12 * d
    std::size_t first_index = 0;  // (d - 1) * tau
    std::size_t length = 0;       // original sequence length N
    std::vector<double> values;   // (N - first_index) rows of `width`

    std::size_t count() const { return length - first_index; }
    std::span<const double> at(std::size_t r) const {
        return {values.data() + (r - first_index) * width, width};
    }
};

/// Requires N > (d-1)*tau + h so that at least one embedded vector has a
/// successor at the prediction horizon.
EmbeddedSeries embed(const ChromaSequence& seq, const EmbeddingConfig& cfg);

/// Nearest-neighbour forecasts for a target sequence. Entry i predicts row
/// `targets[i]` (= t + h) from the neighbour `neighbors[i]` of time t.
struct Predictions {
    std::vector<std::size_t> times;
    std::vector<std::size_t> neighbors;
    std::vector<std::size_t> targets;
    std::vector<Chroma> values;

    std::size_t size() const { return targets.size(); }
};

/// Pearson correlation of two equal-length vectors; 0 if either has zero
/// variance.
double pearson(std::span<const double> a, std::span<const double> b);

/// For each t in [(d-1)tau, N-1-h]: q(t) = argmax over k in [(d-1)tau, M-1-h]
/// of corr(s_k^Y, s_t^X), ties to the smallest k; forecast y_{q(t)+h}.
Predictions cross_predict(const ChromaSequence& x, const ChromaSequence& y, const EmbeddingConfig& cfg);

/// As cross_predict with Y = X, restricted to candidates with |k - t| > R.
Predictions self_predict(const ChromaSequence& x, const EmbeddingConfig& cfg);

struct ConditionalPredictions {
    Predictions predictions;
    double alpha = 0.5;  // weight of the cross forecast
    double mse_self = 0.0;
    double mse_cross = 0.0;
};

/// alpha * cross + (1 - alpha) * self with alpha = MSE_self / (MSE_self +
/// MSE_cross); alpha = 0.5 when both errors vanish.
ConditionalPredictions conditional_predict(const ChromaSequence& x, const ChromaSequence& y,
                                           const EmbeddingConfig& cfg);

/// Mean squared error over all components and forecasts.
double mean_squared_error(const ChromaSequence& x, const Predictions& p);

/// Population variance of every component of x, floored at 1e-12.
Chroma component_variances(const ChromaSequence& x);

struct PredictionErrorStats {
    std::vector<Chroma> errors;      // (forecast - actual) / s_i per component
    std::vector<double> covariance;  // 12 x 12, row-major, (n - 1) denominator
    Chroma scales{};                 // s_i
};

PredictionErrorStats error_stats(const ChromaSequence& x, const Predictions& p);

enum class EntropyMethod { Self, Cross, Conditional };

struct EntropyEstimate {
    double bits = 0.0;
    EntropyMethod method = EntropyMethod::Self;
};

inline constexpr double kCovarianceRegularizer = 1e-9;

/// 0.5 * log2((2 pi e)^k |S + lambda I|) for a k x k row-major covariance S.
double gaussian_entropy_bits(std::span<const double> covariance, std::size_t k);
EntropyEstimate gaussian_entropy(const PredictionErrorStats& stats, EntropyMethod method);

EntropyEstimate self_entropy(const ChromaSequence& x, const EmbeddingConfig& cfg);
/// Entropy of the errors made when forecasting x from y.
EntropyEstimate cross_entropy(const ChromaSequence& x, const ChromaSequence& y, const EmbeddingConfig& cfg);
EntropyEstimate conditional_entropy(const ChromaSequence& x, const ChromaSequence& y,
                                    const EmbeddingConfig& cfg);

/// max{H(X|Y), H(Y|X)} / max{H(X), H(Y)}; throws when |denominator| < 1e-9.
double nid_from_entropies(double cond_xy, double cond_yx, double self_x, double self_y);

double nid_continuous(const ChromaSequence& x, const ChromaSequence& y, const EmbeddingConfig& cfg);
double nid_continuous(const ChromaSequence& x, const ChromaSequence& y, const EmbeddingConfig& cfg,
                      double self_x, double self_y);

double d_cross_continuous(const ChromaSequence& x, const ChromaSequence& y, const EmbeddingConfig& cfg);
double d_cross_continuous(const ChromaSequence& x, const ChromaSequence& y, const EmbeddingConfig& cfg,
                          double self_x, double self_y);

/// Mean over components of MSE_i / var_i, var_i taken over all of x.
double normalized_mse(const ChromaSequence& x, const Predictions& p);

/// 0.5 * (NMSE(X|Y) + NMSE(Y|X)) from cross-prediction.
double nmse_cross(const ChromaSequence& x, const ChromaSequence& y, const EmbeddingConfig& cfg);

}  // namespace simscore
