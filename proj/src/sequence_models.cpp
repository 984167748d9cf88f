#include "simscore/sequence_models.hpp"

#include <limits>
#include <string>

#include "simscore/types.hpp"

namespace simscore {

PredictorKind parse_predictor_kind(std::string_view name) {
    if (name == "ppmc" || name == "ppm") {
        return PredictorKind::Ppmc;
    }
    if (name == "lz78" || name == "lz") {
        return PredictorKind::Lz78;
    }
    throw Error("unknown predictor: " + std::string(name));
}

std::string_view to_string(PredictorKind kind) {
    return kind == PredictorKind::Ppmc ? "ppmc" : "lz78";
}

std::vector<double> SequencePredictor::distribution() const {
    std::vector<double> p(static_cast<std::size_t>(alphabet_size()));
    for (int s = 0; s < alphabet_size(); ++s) {
        p[static_cast<std::size_t>(s)] = probability(s);
    }
    return p;
}

// ---------------------------------------------------------------------------
// PPMC

PpmcPredictor::PpmcPredictor(int alphabet_size, int max_order)
    : alphabet_size_(alphabet_size), max_order_(max_order) {
    if (alphabet_size < 1) {
        throw Error("alphabet size must be positive");
    }
    if (max_order < 0) {
        throw Error("PPM order must be nonnegative");
    }
    // Context keys are base-(K+1) numbers with max_order digits.
    double capacity = 1.0;
    for (int i = 0; i < max_order; ++i) {
        capacity *= static_cast<double>(alphabet_size) + 1.0;
    }
    if (capacity > static_cast<double>(std::numeric_limits<std::uint64_t>::max() / 2)) {
        throw Error("PPM order too large for alphabet");
    }
    history_.reserve(static_cast<std::size_t>(max_order) + 1);
}

std::uint64_t PpmcPredictor::context_key(std::size_t length) const {
    // Digits are symbol + 1, so contexts of different lengths never collide.
    const auto base = static_cast<std::uint64_t>(alphabet_size_) + 1;
    std::uint64_t key = 0;
    for (std::size_t i = history_.size() - length; i < history_.size(); ++i) {
        key = key * base + static_cast<std::uint64_t>(history_[i]) + 1;
    }
    return key;
}

double PpmcPredictor::probability(int symbol) const {
    double p = 1.0 / static_cast<double>(alphabet_size_);
    for (std::size_t length = 0; length <= history_.size(); ++length) {
        const auto it = contexts_.find(context_key(length));
        if (it == contexts_.end() || it->second.total == 0) {
            continue;
        }
        const ContextStats& ctx = it->second;
        const double n = ctx.total;
        const double q = ctx.distinct;
        p = (static_cast<double>(ctx.counts[static_cast<std::size_t>(symbol)]) + q * p) / (n + q);
    }
    return p;
}

void PpmcPredictor::update(int symbol) {
    for (std::size_t length = 0; length <= history_.size(); ++length) {
        ContextStats& ctx = contexts_[context_key(length)];
        if (ctx.counts.empty()) {
            ctx.counts.assign(static_cast<std::size_t>(alphabet_size_), 0);
        }
        auto& c = ctx.counts[static_cast<std::size_t>(symbol)];
        if (c == 0) {
            ++ctx.distinct;
        }
        ++c;
        ++ctx.total;
    }
    push_history(symbol);
}

void PpmcPredictor::advance(int symbol) { push_history(symbol); }

void PpmcPredictor::push_history(int symbol) {
    if (max_order_ == 0) {
        return;
    }
    if (static_cast<int>(history_.size()) == max_order_) {
        history_.erase(history_.begin());
    }
    history_.push_back(symbol);
}

// ---------------------------------------------------------------------------
// LZ78

Lz78Predictor::Lz78Predictor(int alphabet_size) : alphabet_size_(alphabet_size) {
    if (alphabet_size < 1) {
        throw Error("alphabet size must be positive");
    }
    nodes_.push_back(make_node());
}

Lz78Predictor::Node Lz78Predictor::make_node() const {
    Node node;
    node.children.assign(static_cast<std::size_t>(alphabet_size_), -1);
    node.counts.assign(static_cast<std::size_t>(alphabet_size_), 0);
    return node;
}

double Lz78Predictor::probability(int symbol) const {
    const Node& node = nodes_[current_];
    return (static_cast<double>(node.counts[static_cast<std::size_t>(symbol)]) + 1.0) /
           (static_cast<double>(node.total) + static_cast<double>(alphabet_size_));
}

void Lz78Predictor::update(int symbol) {
    const auto s = static_cast<std::size_t>(symbol);
    {
        Node& node = nodes_[current_];
        ++node.counts[s];
        ++node.total;
    }
    const int child = nodes_[current_].children[s];
    if (child >= 0) {
        current_ = static_cast<std::size_t>(child);
        return;
    }
    nodes_.push_back(make_node());
    nodes_[current_].children[s] = static_cast<int>(nodes_.size() - 1);
    current_ = 0;
}

void Lz78Predictor::advance(int symbol) {
    const int child = nodes_[current_].children[static_cast<std::size_t>(symbol)];
    current_ = child >= 0 ? static_cast<std::size_t>(child) : 0;
}

std::unique_ptr<SequencePredictor> make_predictor(PredictorKind kind, int alphabet_size,
                                                  int ppm_order) {
    if (kind == PredictorKind::Ppmc) {
        return std::make_unique<PpmcPredictor>(alphabet_size, ppm_order);
    }
    return std::make_unique<Lz78Predictor>(alphabet_size);
}

}  // namespace simscore
