#pragma once

#include "simscore/quantize.hpp"
#include "simscore/sequence_models.hpp"
#include "simscore/types.hpp"

namespace simscore {

struct PredictorSpec {
    PredictorKind kind = PredictorKind::Ppmc;
    int order = kDefaultPpmOrder;  // PPMC only
};

/// Average log-loss in bits per symbol.
struct LogLoss {
    double bits_per_symbol = 0.0;
};

/// Adaptive self-prediction: each symbol is scored, then learned.
LogLoss self_log_loss(const PredictorSpec& spec, const SymbolString& s);

/// Model fitted on `train` and frozen; `eval` supplies only the context.
LogLoss cross_log_loss(const PredictorSpec& spec, const SymbolString& train, const SymbolString& eval);

/// The model learns all of `y` first, then continues adaptively over `x`;
/// only the `x` symbols are scored.
LogLoss conditional_log_loss(const PredictorSpec& spec, const SymbolString& x, const SymbolString& y);

double ncda_from_losses(double loss_x, double loss_y, double loss_joint);

/// (h_cross_xy + h_cross_yx) / (h_x + h_y). Shared by the discrete and
/// continuous cross-prediction distances.
double cross_entropy_ratio(double cross_xy, double cross_yx, double self_x, double self_y);

/// Both use the same canonical argument order as ncda, so they are symmetric.
double ncd_pred(const PredictorSpec& spec, const SymbolString& x, const SymbolString& y);
double ncda_pred(const PredictorSpec& spec, const SymbolString& x, const SymbolString& y);

double d_cross_discrete(const PredictorSpec& spec, const SymbolString& x, const SymbolString& y);

/// KL divergence in bits, with 0 log(0 / q) = 0.
double kl_divergence(const Histogram& p, const Histogram& q);

/// KL(p || m) + KL(q || m) with m = (p + q) / 2, in bits. There is no 1/2
/// factor, so the range is [0, 2].
double jsd(const Histogram& p, const Histogram& q);

}  // namespace simscore
