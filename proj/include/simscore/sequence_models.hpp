#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace simscore {

enum class PredictorKind { Ppmc, Lz78 };

inline constexpr int kDefaultPpmOrder = 5;

PredictorKind parse_predictor_kind(std::string_view name);
std::string_view to_string(PredictorKind kind);

/// Sequential next-symbol model over the alphabet [0, K).
///
/// `update` learns the symbol in the current context and advances; `advance`
/// only moves the context forward, leaving the statistics frozen. Every
/// predicted distribution is strictly positive and sums to one.
class SequencePredictor {
  public:
    virtual ~SequencePredictor() = default;

    virtual int alphabet_size() const = 0;
    virtual double probability(int symbol) const = 0;
    virtual void update(int symbol) = 0;
    virtual void advance(int symbol) = 0;
    virtual void reset_context() = 0;

    std::vector<double> distribution() const;
};

/// PPM with escape method C. Orders are blended bottom-up: the order-L
/// estimate is (c_s + q * p_{L-1}(s)) / (n + q), where n is the context's
/// total count and q its number of distinct symbols; below order 0 the
/// model is uniform. Contexts never seen are skipped.
class PpmcPredictor final : public SequencePredictor {
  public:
    PpmcPredictor(int alphabet_size, int max_order);

    int alphabet_size() const override { return alphabet_size_; }
    double probability(int symbol) const override;
    void update(int symbol) override;
    void advance(int symbol) override;
    void reset_context() override { history_.clear(); }

    int max_order() const { return max_order_; }

  private:
    struct ContextStats {
        std::vector<std::uint32_t> counts;
        std::uint32_t total = 0;
        std::uint32_t distinct = 0;
    };

    std::uint64_t context_key(std::size_t length) const;
    void push_history(int symbol);

    int alphabet_size_;
    int max_order_;
    std::vector<int> history_;  // most recent symbol last, at most max_order_ long
    std::unordered_map<std::uint64_t, ContextStats> contexts_;
};

/// LZ78 phrase-tree predictor. At the current node the next-symbol estimate
/// is (count(child) + 1) / (count(node) + K). Learning walks the tree,
/// growing a new leaf and returning to the root at the end of each phrase.
class Lz78Predictor final : public SequencePredictor {
  public:
    explicit Lz78Predictor(int alphabet_size);

    int alphabet_size() const override { return alphabet_size_; }
    double probability(int symbol) const override;
    void update(int symbol) override;
    void advance(int symbol) override;
    void reset_context() override { current_ = 0; }

    std::size_t node_count() const { return nodes_.size(); }

  private:
    struct Node {
        std::vector<int> children;
        std::vector<std::uint32_t> counts;
        std::uint32_t total = 0;
    };

    Node make_node() const;

    int alphabet_size_;
    std::vector<Node> nodes_;
    std::size_t current_ = 0;
};

std::unique_ptr<SequencePredictor> make_predictor(PredictorKind kind, int alphabet_size,
                                                  int ppm_order = kDefaultPpmOrder);

}  // namespace simscore
