#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "simscore/sequence_models.hpp"
#include "simscore/types.hpp"

namespace simscore {

enum class CompressorId {
    SeqDict,   // LZ78 incremental parse with fixed phrase costs
    PpmCoder,  // ideal arithmetic-code length under PPMC
    BlockSort  // external block-sorting program
};

CompressorId parse_compressor_id(std::string_view name);
std::string_view to_string(CompressorId id);

struct CodeLength {
    double bits = 0.0;
};

struct CompressorOptions {
    int ppm_order = kDefaultPpmOrder;
    std::string block_sort_cmd;  // empty: backend unavailable
};

/// Any code-length function; the compressors below and test stubs alike.
using CodeLengthFn = std::function<CodeLength(const SymbolString&)>;

/// Sum over LZ78 phrases t = 1..T of ceil(log2 t) + ceil(log2 K) bits.
/// A trailing incomplete phrase is charged like any other.
CodeLength seq_dict_code_length(const SymbolString& s);

/// -sum log2 p(s_i | s_1..s_{i-1}) under an adaptive PPMC model.
CodeLength ppm_code_length(const SymbolString& s, int order = kDefaultPpmOrder);

/// Runs `command` with the alphanumeric string on stdin; the compressed size
/// is the byte count of its stdout, times eight.
CodeLength block_sort_code_length(const SymbolString& s, const std::string& command);

CodeLength code_length(CompressorId id, const SymbolString& s, const CompressorOptions& options = {});
CodeLengthFn make_code_length(CompressorId id, const CompressorOptions& options = {});

/// Symbol k becomes the printable character 33 + k (requires K <= 90).
std::string to_alphanumeric(const SymbolString& s);

SymbolString concat(const SymbolString& x, const SymbolString& y);

struct Alignment {
    SymbolString first;   // padded first input
    SymbolString second;  // padded second input, before the circular shift
    std::size_t lag = 0;
    SymbolString interleaved;
};

/// Pads the shorter string at its end with the longer string's most common
/// symbol (ties to the smallest symbol), picks the lag maximising the circular
/// cross-correlation sum_n a_n * b_{(n + lag) mod N} (ties to the smallest
/// lag), rotates the second string by that lag and interleaves a1 b1 a2 b2...
Alignment align_detail(const SymbolString& x, const SymbolString& y);
SymbolString align(const SymbolString& x, const SymbolString& y);

double ncd_from_lengths(double cx, double cy, double cxy, double cyx);
double ncda_from_lengths(double cx, double cy, double c_aligned);

double ncd(const CodeLengthFn& c, const SymbolString& x, const SymbolString& y);

/// Alignment is not symmetric in its arguments, so the pair is put in a
/// canonical order first (longer string first, equal lengths in
/// lexicographic order). This makes ncda(x, y) == ncda(y, x) exactly.
double ncda(const CodeLengthFn& c, const SymbolString& x, const SymbolString& y);

double ncd(CompressorId id, const SymbolString& x, const SymbolString& y,
           const CompressorOptions& options = {});
double ncda(CompressorId id, const SymbolString& x, const SymbolString& y,
            const CompressorOptions& options = {});

/// Canonical argument order used by ncda; true when (x, y) should be swapped.
bool swap_for_alignment(const SymbolString& x, const SymbolString& y);

}  // namespace simscore
