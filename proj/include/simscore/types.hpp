#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace simscore {

inline constexpr std::size_t kChromaBins = 12;

/// One 12-bin pitch-class vector.
using Chroma = std::array<double, kChromaBins>;

/// Error raised on any violated precondition. Messages are short and stable
/// so callers (and tests) can match on them.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Beat-synchronous chroma, one row per beat interval.
struct ChromaSequence {
    std::vector<Chroma> rows;

    std::size_t size() const { return rows.size(); }
    bool empty() const { return rows.empty(); }
    const Chroma& operator[](std::size_t i) const { return rows[i]; }
    Chroma& operator[](std::size_t i) { return rows[i]; }

    friend bool operator==(const ChromaSequence&, const ChromaSequence&) = default;
};

/// Integer codeword string over the alphabet [0, alphabet_size).
struct SymbolString {
    std::vector<int> symbols;
    int alphabet_size = 0;

    std::size_t size() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }
    int operator[](std::size_t i) const { return symbols[i]; }

    friend bool operator==(const SymbolString&, const SymbolString&) = default;
};

/// Normalised codeword histogram; weights sum to one.
struct Histogram {
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
};

// Throws if any symbol is outside [0, alphabet_size) or the string is empty.
void validate(const SymbolString& s);

}  // namespace simscore
