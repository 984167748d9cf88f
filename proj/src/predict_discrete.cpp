#include "simscore/predict_discrete.hpp"

#include <algorithm>
#include <cmath>

#include "simscore/compress_distance.hpp"

namespace simscore {

namespace {

void require_same_alphabet(const SymbolString& x, const SymbolString& y) {
    validate(x);
    validate(y);
    if (x.alphabet_size != y.alphabet_size) {
        throw Error("alphabet mismatch");
    }
}

double score_adaptive(SequencePredictor& model, const SymbolString& s) {
    double bits = 0.0;
    for (int c : s.symbols) {
        bits -= std::log2(model.probability(c));
        model.update(c);
    }
    return bits;
}

}  // namespace

LogLoss self_log_loss(const PredictorSpec& spec, const SymbolString& s) {
    validate(s);
    auto model = make_predictor(spec.kind, s.alphabet_size, spec.order);
    return {score_adaptive(*model, s) / static_cast<double>(s.size())};
}

LogLoss cross_log_loss(const PredictorSpec& spec, const SymbolString& train, const SymbolString& eval) {
    require_same_alphabet(train, eval);
    auto model = make_predictor(spec.kind, train.alphabet_size, spec.order);
    for (int c : train.symbols) {
        model->update(c);
    }
    model->reset_context();
    double bits = 0.0;
    for (int c : eval.symbols) {
        bits -= std::log2(model->probability(c));
        model->advance(c);
    }
    return {bits / static_cast<double>(eval.size())};
}

LogLoss conditional_log_loss(const PredictorSpec& spec, const SymbolString& x, const SymbolString& y) {
    require_same_alphabet(x, y);
    auto model = make_predictor(spec.kind, x.alphabet_size, spec.order);
    for (int c : y.symbols) {
        model->update(c);
    }
    return {score_adaptive(*model, x) / static_cast<double>(x.size())};
}

double ncda_from_losses(double loss_x, double loss_y, double loss_joint) {
    const double denominator = std::max(loss_x, loss_y);
    if (!(denominator > 0.0)) {
        throw Error("degenerate log-loss");
    }
    return (loss_joint - std::min(loss_x, loss_y)) / denominator;
}

double cross_entropy_ratio(double cross_xy, double cross_yx, double self_x, double self_y) {
    const double denominator = self_x + self_y;
    if (std::abs(denominator) < 1e-9) {
        throw Error("degenerate denominator");
    }
    return (cross_xy + cross_yx) / denominator;
}

double ncd_pred(const PredictorSpec& spec, const SymbolString& x, const SymbolString& y) {
    const SymbolString joint = swap_for_alignment(x, y) ? concat(y, x) : concat(x, y);
    return ncda_from_losses(self_log_loss(spec, x).bits_per_symbol, self_log_loss(spec, y).bits_per_symbol,
                            self_log_loss(spec, joint).bits_per_symbol);
}

double ncda_pred(const PredictorSpec& spec, const SymbolString& x, const SymbolString& y) {
    const SymbolString joint = swap_for_alignment(x, y) ? align(y, x) : align(x, y);
    return ncda_from_losses(self_log_loss(spec, x).bits_per_symbol, self_log_loss(spec, y).bits_per_symbol,
                            self_log_loss(spec, joint).bits_per_symbol);
}

double d_cross_discrete(const PredictorSpec& spec, const SymbolString& x, const SymbolString& y) {
    require_same_alphabet(x, y);
    // H×(X, Y) is estimated by predicting x with the model of y.
    const double cross_xy = cross_log_loss(spec, y, x).bits_per_symbol;
    const double cross_yx = cross_log_loss(spec, x, y).bits_per_symbol;
    return cross_entropy_ratio(cross_xy, cross_yx, self_log_loss(spec, x).bits_per_symbol,
                               self_log_loss(spec, y).bits_per_symbol);
}

double kl_divergence(const Histogram& p, const Histogram& q) {
    if (p.size() != q.size()) {
        throw Error("dimension mismatch");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.weights[i] > 0.0) {
            d += p.weights[i] * std::log2(p.weights[i] / q.weights[i]);
        }
    }
    return d;
}

double jsd(const Histogram& p, const Histogram& q) {
    if (p.size() != q.size()) {
        throw Error("dimension mismatch");
    }
    Histogram mean;
    mean.weights.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        mean.weights[i] = 0.5 * (p.weights[i] + q.weights[i]);
    }
    return kl_divergence(p, mean) + kl_divergence(q, mean);
}

}  // namespace simscore
