#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "simscore/compress_distance.hpp"

using namespace simscore;
using oracle::symbols;

namespace {

// Code lengths looked up from a fixed table, for checking the formulas.
CodeLengthFn stub(std::map<std::vector<int>, double> table) {
    return [table](const SymbolString& s) { return CodeLength{table.at(s.symbols)}; };
}

SymbolString low_entropy(std::size_t n, int k, std::mt19937_64& rng) {
    // A short motif repeated with rare substitutions.
    const std::vector<int> motif{0, 1, 2, 1, 3, 1, 2, 0};
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> any(0, k - 1);
    SymbolString s;
    s.alphabet_size = k;
    for (std::size_t i = 0; i < n; ++i) {
        s.symbols.push_back(u(rng) < 0.05 ? any(rng) : motif[i % motif.size()]);
    }
    return s;
}

SymbolString rotate(const SymbolString& s, std::size_t by) {
    SymbolString out = s;
    std::rotate(out.symbols.begin(), out.symbols.begin() + static_cast<std::ptrdiff_t>(by), out.symbols.end());
    return out;
}

}  // namespace

TEST_CASE("seq_dict single symbol costs one bit") {
    CHECK(seq_dict_code_length(symbols({0}, 2)).bits == 1.0);
}

TEST_CASE("seq_dict on 0,0,0,0 matches a hand parse") {
    // Phrases (0), (0,0), (0): 0+1, 1+1, 2+1 bits.
    CHECK(oracle::lz78_phrase_count({0, 0, 0, 0}) == 3);
    CHECK(seq_dict_code_length(symbols({0, 0, 0, 0}, 2)).bits == 6.0);
    CHECK(seq_dict_code_length(symbols({0, 0, 0, 0}, 2)).bits == oracle::lz78_bits({0, 0, 0, 0}, 2));
}

TEST_CASE("seq_dict agrees with the reference parser") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> len(1, 300);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 1 + trial % 20;
        const SymbolString s = oracle::random_symbols(static_cast<std::size_t>(len(rng)), k, rng);
        CHECK(seq_dict_code_length(s).bits == oracle::lz78_bits(s.symbols, k));
    }
}

TEST_CASE("code_length rejects empty strings and missing backends") {
    CHECK_THROWS(seq_dict_code_length(symbols({}, 2)));
    CHECK_THROWS(ppm_code_length(symbols({}, 2)));
    CHECK_THROWS_WITH(code_length(CompressorId::BlockSort, symbols({0, 1}, 2)), "backend unavailable");
}

TEST_CASE("ppm code length on a uniform source at the default order") {
    std::mt19937_64 rng(2024);
    const SymbolString s = oracle::random_symbols(10000, 4, rng);
    const double bps = ppm_code_length(s).bits / 10000.0;
    MESSAGE("order-5 bits/symbol on uniform K=4: " << bps);
    CHECK(std::abs(bps - 2.0) <= 0.1);
    CHECK(bps <= 2.0 * 1.05);
}

TEST_CASE("ppm code length on a uniform source at order 1") {
    std::mt19937_64 rng(2024);
    const SymbolString s = oracle::random_symbols(10000, 4, rng);
    const double bps = ppm_code_length(s, 1).bits / 10000.0;
    CHECK(std::abs(bps - 2.0) <= 0.1);
    CHECK(bps >= 2.0 - 1e-9);  // cannot beat the source entropy by much on 10^4 draws
}

TEST_CASE("block_sort backend counts output bytes") {
    const SymbolString s = symbols({0, 1, 2, 3, 4}, 5);
    CHECK(block_sort_code_length(s, "cat").bits == 40.0);
    CHECK_THROWS(block_sort_code_length(s, "false"));
    CompressorOptions opt;
    opt.block_sort_cmd = "cat";
    CHECK(ncd(CompressorId::BlockSort, s, s, opt) == doctest::Approx(1.0));
}

TEST_CASE("alphanumeric mapping") {
    CHECK(to_alphanumeric(symbols({0, 1, 89}, 90)) == std::string("!\"z"));
    CHECK_THROWS(to_alphanumeric(symbols({0}, 91)));
}

TEST_CASE("concat") {
    CHECK(concat(symbols({0}, 2), symbols({1}, 2)).symbols == std::vector<int>{0, 1});
    std::mt19937_64 rng(5);
    const SymbolString x = oracle::random_symbols(17, 3, rng);
    const SymbolString y = oracle::random_symbols(9, 3, rng);
    CHECK(concat(x, y).size() == 26);
    CHECK_THROWS(concat(x, symbols({}, 3)));
    CHECK_THROWS_WITH(concat(x, symbols({0}, 4)), "alphabet mismatch");
}

TEST_CASE("align of a string with itself interleaves it") {
    const SymbolString x = symbols({1, 3, 0, 2, 2}, 4);
    const Alignment a = align_detail(x, x);
    CHECK(a.lag == 0);
    CHECK(a.interleaved.symbols == std::vector<int>{1, 1, 3, 3, 0, 0, 2, 2, 2, 2});
}

TEST_CASE("align recovers a circular shift by exhaustive search") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const SymbolString x = oracle::random_symbols(40, 8, rng);
        const SymbolString y = rotate(x, 3);
        std::size_t best_lag = 0;
        long best = -1;
        for (std::size_t lag = 0; lag < 40; ++lag) {
            long r = 0;
            for (std::size_t i = 0; i < 40; ++i) {
                r += static_cast<long>(x[i]) * y[(i + lag) % 40];
            }
            if (r > best) {
                best = r;
                best_lag = lag;
            }
        }
        CHECK(align_detail(x, y).lag == best_lag);
    }
}

TEST_CASE("align pads the shorter string with the longer one's mode") {
    const SymbolString x = symbols({2, 1, 1, 2, 0}, 3);  // mode tie 1/2 -> 1
    const SymbolString y = symbols({0, 2}, 3);
    const Alignment a = align_detail(x, y);
    CHECK(a.second.symbols == std::vector<int>{0, 2, 1, 1, 1});
    CHECK(a.interleaved.size() == 10);
    CHECK(align(y, x).size() == 10);
    CHECK_THROWS(align(x, symbols({0}, 4)));
}

TEST_CASE("align output can be undone") {
    std::mt19937_64 rng(88);
    std::uniform_int_distribution<int> len(1, 60);
    for (int trial = 0; trial < 100; ++trial) {
        const SymbolString x = oracle::random_symbols(static_cast<std::size_t>(len(rng)), 6, rng);
        const SymbolString y = oracle::random_symbols(static_cast<std::size_t>(len(rng)), 6, rng);
        const Alignment a = align_detail(x, y);
        const std::size_t n = a.first.size();
        REQUIRE(a.interleaved.size() == 2 * n);
        CHECK(a.interleaved.alphabet_size == 6);
        std::vector<int> first, second(n);
        for (std::size_t i = 0; i < n; ++i) {
            first.push_back(a.interleaved[2 * i]);
            second[(i + a.lag) % n] = a.interleaved[2 * i + 1];
        }
        CHECK(first == a.first.symbols);
        CHECK(second == a.second.symbols);
        // The padded inputs start with the originals.
        CHECK(std::equal(x.symbols.begin(), x.symbols.end(), a.first.symbols.begin()));
        CHECK(std::equal(y.symbols.begin(), y.symbols.end(), a.second.symbols.begin()));
    }
}

TEST_CASE("ncd and ncda formulas on stub code lengths") {
    const SymbolString x = symbols({0}, 2);
    const SymbolString y = symbols({1, 1}, 2);
    const auto c = stub({{{0}, 100}, {{1, 1}, 120}, {{0, 1, 1}, 150}, {{1, 1, 0}, 160}, {{1, 0, 1, 1}, 180}});
    CHECK(ncd(c, x, y) == doctest::Approx(50.0 / 120.0).epsilon(1e-12));
    CHECK(ncd(c, x, y) == doctest::Approx(0.41667).epsilon(1e-5));
    CHECK(ncda(c, x, y) == doctest::Approx(80.0 / 120.0).epsilon(1e-12));
    CHECK(ncda_from_lengths(100, 120, 180) == doctest::Approx(0.66667).epsilon(1e-5));
    CHECK_THROWS(ncd_from_lengths(0, 0, 1, 1));
}

TEST_CASE("self distance is below distance to an unrelated string") {
    std::mt19937_64 rng(500);
    for (int trial = 0; trial < 5; ++trial) {
        const SymbolString x = low_entropy(500, 8, rng);
        const SymbolString r = oracle::random_symbols(500, 8, rng);
        for (CompressorId id : {CompressorId::SeqDict, CompressorId::PpmCoder}) {
            CHECK(ncd(id, x, x) < ncd(id, x, r));
            CHECK(ncda(id, x, x) < ncda(id, x, r));
        }
    }
}

TEST_CASE("ncd is symmetric and ncda is symmetric on strings of distinct lengths") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 50; ++trial) {
        const SymbolString x = oracle::random_symbols(80 + static_cast<std::size_t>(trial), 6, rng);
        const SymbolString y = oracle::random_symbols(40, 6, rng);
        for (CompressorId id : {CompressorId::SeqDict, CompressorId::PpmCoder}) {
            CHECK(ncd(id, x, y) == ncd(id, y, x));
            CHECK(ncda(id, x, y) == ncda(id, y, x));
        }
    }
}

TEST_CASE("seq_dict is subadditive within the phrase-cost slack") {
    std::mt19937_64 rng(999);
    std::uniform_int_distribution<int> len(1, 400);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 2 + trial % 15;
        const SymbolString x = oracle::random_symbols(static_cast<std::size_t>(len(rng)), k, rng);
        const SymbolString y = oracle::random_symbols(static_cast<std::size_t>(len(rng)), k, rng);
        const SymbolString xy = concat(x, y);
        const double slack =
            2.0 * (oracle::ceil_log2(k) + oracle::ceil_log2(static_cast<long>(oracle::lz78_phrase_count(xy.symbols))));
        CHECK(seq_dict_code_length(xy).bits <= seq_dict_code_length(x).bits + seq_dict_code_length(y).bits + slack);
    }
}

namespace {

struct RangeCase {
    SymbolString x, y;
    double bound;
};

std::vector<RangeCase> range_cases() {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> len(1, 200);
    std::vector<RangeCase> out;
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 2 + trial % 10;
        RangeCase c;
        c.x = oracle::random_symbols(static_cast<std::size_t>(len(rng)), k, rng);
        c.y = oracle::random_symbols(static_cast<std::size_t>(len(rng)), k, rng);
        const double cx = seq_dict_code_length(c.x).bits;
        const double cy = seq_dict_code_length(c.y).bits;
        const SymbolString xy = concat(c.x, c.y);
        const double slack =
            2.0 * (oracle::ceil_log2(k) + oracle::ceil_log2(static_cast<long>(oracle::lz78_phrase_count(xy.symbols))));
        c.bound = 1.0 + slack / std::max(cx, cy);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

TEST_CASE("ncd stays in its range") {
    for (const RangeCase& c : range_cases()) {
        const double d = ncd(CompressorId::SeqDict, c.x, c.y);
        CHECK(d >= 0.0);
        CHECK(d <= c.bound);
    }
}

TEST_CASE("ncda stays in the ncd range") {
    int over = 0;
    for (const RangeCase& c : range_cases()) {
        const double d = ncda(CompressorId::SeqDict, c.x, c.y);
        CHECK(d >= 0.0);
        CHECK(d <= c.bound);
        over += d > c.bound;
    }
    MESSAGE("ncda above the bound on " << over << " of 100 pairs");
}
