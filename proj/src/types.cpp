#include "simscore/types.hpp"

namespace simscore {

void validate(const SymbolString& s) {
    if (s.empty()) {
        throw Error("empty symbol string");
    }
    if (s.alphabet_size < 1) {
        throw Error("alphabet size must be positive");
    }
    for (int c : s.symbols) {
        if (c < 0 || c >= s.alphabet_size) {
            throw Error("symbol outside alphabet");
        }
    }
}

}  // namespace simscore
