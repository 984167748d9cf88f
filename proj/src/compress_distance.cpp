#include "simscore/compress_distance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>

namespace simscore {

namespace {

std::uint64_t ceil_log2(std::uint64_t n) { return n <= 1 ? 0 : std::bit_width(n - 1); }

void require_same_alphabet(const SymbolString& x, const SymbolString& y) {
    if (x.alphabet_size != y.alphabet_size) {
        throw Error("alphabet mismatch");
    }
}

int mode_symbol(const SymbolString& s) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(s.alphabet_size), 0);
    for (int c : s.symbols) {
        ++counts[static_cast<std::size_t>(c)];
    }
    // max_element returns the first maximum, i.e. the smallest symbol.
    return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

SymbolString padded(const SymbolString& s, std::size_t length, int fill) {
    SymbolString out = s;
    out.symbols.resize(length, fill);
    return out;
}

}  // namespace

CompressorId parse_compressor_id(std::string_view name) {
    if (name == "seq_dict" || name == "lz") {
        return CompressorId::SeqDict;
    }
    if (name == "ppm" || name == "ppm_coder") {
        return CompressorId::PpmCoder;
    }
    if (name == "block_sort" || name == "bw") {
        return CompressorId::BlockSort;
    }
    throw Error("unknown compressor: " + std::string(name));
}

std::string_view to_string(CompressorId id) {
    switch (id) {
        case CompressorId::SeqDict:
            return "seq_dict";
        case CompressorId::PpmCoder:
            return "ppm";
        case CompressorId::BlockSort:
            return "block_sort";
    }
    return "unknown";
}

CodeLength seq_dict_code_length(const SymbolString& s) {
    validate(s);
    const auto symbol_bits = ceil_log2(static_cast<std::uint64_t>(s.alphabet_size));
    const auto k = static_cast<std::size_t>(s.alphabet_size);

    // Trie of phrases; children[node * K + symbol] is the child node or 0.
    std::vector<std::uint32_t> children(k, 0);
    std::uint32_t nodes = 1;
    std::uint32_t node = 0;
    std::uint64_t phrases = 0;
    std::uint64_t bits = 0;
    for (int c : s.symbols) {
        const std::size_t slot = static_cast<std::size_t>(node) * k + static_cast<std::size_t>(c);
        if (children[slot] != 0) {
            node = children[slot];
            continue;
        }
        children[slot] = nodes++;
        children.resize(static_cast<std::size_t>(nodes) * k, 0);
        ++phrases;
        bits += ceil_log2(phrases) + symbol_bits;
        node = 0;
    }
    if (node != 0) {
        ++phrases;
        bits += ceil_log2(phrases) + symbol_bits;
    }
    return {static_cast<double>(bits)};
}

CodeLength ppm_code_length(const SymbolString& s, int order) {
    validate(s);
    PpmcPredictor model(s.alphabet_size, order);
    double bits = 0.0;
    for (int c : s.symbols) {
        bits -= std::log2(model.probability(c));
        model.update(c);
    }
    return {bits};
}

CodeLength block_sort_code_length(const SymbolString& s, const std::string& command) {
    validate(s);
    if (command.empty()) {
        throw Error("backend unavailable");
    }
    const std::string text = to_alphanumeric(s);

    std::string path = (std::filesystem::temp_directory_path() / "simscore-bs-XXXXXX").string();
    const int fd = ::mkstemp(path.data());
    if (fd < 0) {
        throw Error("backend unavailable: cannot create temporary file");
    }
    ::close(fd);
    {
        std::ofstream out(path, std::ios::binary);
        out << text;
    }

    const std::string shell = command + " < '" + path + "'";
    FILE* pipe = ::popen(shell.c_str(), "r");
    if (pipe == nullptr) {
        std::filesystem::remove(path);
        throw Error("backend unavailable");
    }
    std::size_t bytes = 0;
    char buffer[4096];
    std::size_t got = 0;
    while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        bytes += got;
    }
    const int status = ::pclose(pipe);
    std::filesystem::remove(path);
    if (status != 0) {
        throw Error("backend unavailable: command failed");
    }
    return {static_cast<double>(bytes) * 8.0};
}

CodeLength code_length(CompressorId id, const SymbolString& s, const CompressorOptions& options) {
    switch (id) {
        case CompressorId::SeqDict:
            return seq_dict_code_length(s);
        case CompressorId::PpmCoder:
            return ppm_code_length(s, options.ppm_order);
        case CompressorId::BlockSort:
            return block_sort_code_length(s, options.block_sort_cmd);
    }
    throw Error("unknown compressor");
}

CodeLengthFn make_code_length(CompressorId id, const CompressorOptions& options) {
    return [id, options](const SymbolString& s) { return code_length(id, s, options); };
}

std::string to_alphanumeric(const SymbolString& s) {
    if (s.alphabet_size > 90) {
        throw Error("alphabet too large for character mapping (K > 90)");
    }
    std::string out;
    out.reserve(s.size());
    for (int c : s.symbols) {
        out.push_back(static_cast<char>(33 + c));
    }
    return out;
}

SymbolString concat(const SymbolString& x, const SymbolString& y) {
    validate(x);
    validate(y);
    require_same_alphabet(x, y);
    SymbolString out = x;
    out.symbols.insert(out.symbols.end(), y.symbols.begin(), y.symbols.end());
    return out;
}

Alignment align_detail(const SymbolString& x, const SymbolString& y) {
    validate(x);
    validate(y);
    require_same_alphabet(x, y);

    const std::size_t n = std::max(x.size(), y.size());
    Alignment a;
    if (x.size() < n) {
        a.first = padded(x, n, mode_symbol(y));
        a.second = y;
    } else {
        a.first = x;
        a.second = padded(y, n, mode_symbol(x));
    }

    const auto& fa = a.first.symbols;
    const auto& fb = a.second.symbols;
    long long best = -1;
    for (std::size_t lag = 0; lag < n; ++lag) {
        long long r = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t j = i + lag;
            if (j >= n) {
                j -= n;
            }
            r += static_cast<long long>(fa[i]) * fb[j];
        }
        if (r > best) {
            best = r;
            a.lag = lag;
        }
    }

    a.interleaved.alphabet_size = x.alphabet_size;
    a.interleaved.symbols.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        a.interleaved.symbols.push_back(fa[i]);
        a.interleaved.symbols.push_back(fb[(i + a.lag) % n]);
    }
    return a;
}

SymbolString align(const SymbolString& x, const SymbolString& y) { return align_detail(x, y).interleaved; }

double ncd_from_lengths(double cx, double cy, double cxy, double cyx) {
    const double denominator = std::max(cx, cy);
    if (!(denominator > 0.0)) {
        throw Error("degenerate code lengths");
    }
    return std::max(cxy - cx, cyx - cy) / denominator;
}

double ncda_from_lengths(double cx, double cy, double c_aligned) {
    const double denominator = std::max(cx, cy);
    if (!(denominator > 0.0)) {
        throw Error("degenerate code lengths");
    }
    return (c_aligned - std::min(cx, cy)) / denominator;
}

double ncd(const CodeLengthFn& c, const SymbolString& x, const SymbolString& y) {
    const SymbolString xy = concat(x, y);
    const SymbolString yx = concat(y, x);
    return ncd_from_lengths(c(x).bits, c(y).bits, c(xy).bits, c(yx).bits);
}

bool swap_for_alignment(const SymbolString& x, const SymbolString& y) {
    if (x.size() != y.size()) {
        return y.size() > x.size();
    }
    return y.symbols < x.symbols;
}

double ncda(const CodeLengthFn& c, const SymbolString& x, const SymbolString& y) {
    const bool swap = swap_for_alignment(x, y);
    const SymbolString joint = swap ? align(y, x) : align(x, y);
    return ncda_from_lengths(c(x).bits, c(y).bits, c(joint).bits);
}

double ncd(CompressorId id, const SymbolString& x, const SymbolString& y, const CompressorOptions& options) {
    return ncd(make_code_length(id, options), x, y);
}

double ncda(CompressorId id, const SymbolString& x, const SymbolString& y, const CompressorOptions& options) {
    return ncda(make_code_length(id, options), x, y);
}

}  // namespace simscore
