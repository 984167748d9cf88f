#include "simscore/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "simscore/features.hpp"

namespace simscore {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

Chroma parse_chroma_row(const json& row) {
    if (!row.is_array() || row.size() != kChromaBins) {
        throw Error("chroma rows must have 12 values");
    }
    Chroma out{};
    for (std::size_t k = 0; k < kChromaBins; ++k) {
        if (!row[k].is_number()) {
            throw Error("chroma values must be numbers");
        }
        out[k] = row[k].get<double>();
    }
    return out;
}

std::vector<double> parse_numbers(const json& arr, const char* what) {
    if (!arr.is_array()) {
        throw Error(std::string(what) + " must be an array");
    }
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number()) {
            throw Error(std::string(what) + " must contain numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

double parse_double(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw Error("invalid number: " + text);
    }
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw Error("cannot write " + path.string());
    }
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TrackRecord parse_track_json(const std::string& text, double pbr) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("malformed track json: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string()) {
        throw Error("track json needs a string id");
    }
    TrackRecord track;
    track.id = doc["id"].get<std::string>();
    if (doc.contains("cover_set")) {
        if (!doc["cover_set"].is_string()) {
            throw Error("cover_set must be a string");
        }
        track.cover_set = doc["cover_set"].get<std::string>();
    }

    if (doc.contains("beat_chroma")) {
        const json& rows = doc["beat_chroma"];
        if (!rows.is_array()) {
            throw Error("beat_chroma must be an array");
        }
        ChromaSequence seq;
        for (const auto& row : rows) {
            seq.rows.push_back(parse_chroma_row(row));
        }
        if (seq.empty()) {
            throw Error("track " + track.id + " has an empty sequence");
        }
        // Rows already at unit norm are kept as written so that processed
        // tracks re-read bit-for-bit.
        const ChromaSequence scaled = normalize_rows(seq);
        for (std::size_t i = 0; i < seq.size(); ++i) {
            double sq = 0.0;
            for (double v : seq[i]) {
                sq += v * v;
            }
            if (std::abs(sq - 1.0) > 1e-12) {
                seq.rows[i] = scaled[i];
            }
        }
        track.chroma = std::move(seq);
        return track;
    }

    if (!doc.contains("frames") || !doc.contains("beats")) {
        throw Error("track json needs frames and beats, or beat_chroma");
    }
    const json& frames = doc["frames"];
    if (!frames.is_object() || !frames.contains("times") || !frames.contains("chroma")) {
        throw Error("frames needs times and chroma");
    }
    FrameChroma fc;
    fc.times = parse_numbers(frames["times"], "frames.times");
    if (!frames["chroma"].is_array()) {
        throw Error("frames.chroma must be an array");
    }
    for (const auto& row : frames["chroma"]) {
        fc.vectors.push_back(parse_chroma_row(row));
    }
    BeatGrid grid{parse_numbers(doc["beats"], "beats")};
    validate(fc);
    validate(grid);
    track.chroma = sqrt_compress_normalize(beat_average(fc, resample_beats(grid, pbr)));
    return track;
}

TrackRecord read_track_json(const fs::path& path, double pbr) {
    try {
        return parse_track_json(read_text(path), pbr);
    } catch (const Error& e) {
        throw Error(path.filename().string() + ": " + e.what());
    }
}

std::string track_to_json(const TrackRecord& track) {
    ordered_json doc;
    doc["id"] = track.id;
    doc["cover_set"] = track.cover_set;
    ordered_json rows = ordered_json::array();
    for (const Chroma& r : track.chroma.rows) {
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    doc["beat_chroma"] = std::move(rows);
    return doc.dump() + "\n";
}

void write_track_json(const fs::path& path, const TrackRecord& track) { write_text(path, track_to_json(track)); }

std::vector<TrackRecord> read_track_dir(const fs::path& dir, double pbr) {
    if (!fs::is_directory(dir)) {
        throw Error("not a directory: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw Error("no track files in " + dir.string());
    }
    std::vector<TrackRecord> out;
    out.reserve(files.size());
    for (const auto& f : files) {
        out.push_back(read_track_json(f, pbr));
    }
    return out;
}

std::string track_file_name(const std::string& id, const std::string& extension) {
    std::string name = id;
    std::replace(name.begin(), name.end(), '/', '_');
    std::replace(name.begin(), name.end(), '\\', '_');
    return name + extension;
}

void write_codebook(const fs::path& path, const Codebook& codebook, std::uint64_t seed) {
    std::string text = "# K=" + std::to_string(codebook.size()) + " seed=" + std::to_string(seed) + "\n";
    for (const Chroma& c : codebook.centroids) {
        for (std::size_t k = 0; k < kChromaBins; ++k) {
            text += format_double(c[k]);
            text += k + 1 < kChromaBins ? ',' : '\n';
        }
    }
    write_text(path, text);
}

CodebookFile read_codebook(const fs::path& path) {
    if (!fs::exists(path)) {
        throw Error("codebook file not found: " + path.string());
    }
    std::istringstream in(read_text(path));
    std::string line;
    if (!std::getline(in, line)) {
        throw Error("empty codebook file");
    }
    long long k = 0;
    unsigned long long seed = 0;
    if (std::sscanf(line.c_str(), "# K=%lld seed=%llu", &k, &seed) != 2 || k <= 0) {
        throw Error("malformed codebook header");
    }
    CodebookFile out;
    out.seed = seed;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != kChromaBins) {
            throw Error("codebook rows must have 12 values");
        }
        Chroma c{};
        for (std::size_t i = 0; i < kChromaBins; ++i) {
            c[i] = parse_double(trim(cells[i]));
        }
        out.codebook.centroids.push_back(c);
    }
    if (out.codebook.size() != k) {
        throw Error("codebook row count does not match header");
    }
    return out;
}

void write_symbols(const fs::path& path, const SymbolString& symbols) {
    std::string text;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (i > 0) {
            text += ',';
        }
        text += std::to_string(symbols[i]);
    }
    write_text(path, text + "\n");
}

SymbolString read_symbols(const fs::path& path, int alphabet_size) {
    SymbolString out;
    out.alphabet_size = alphabet_size;
    for (const std::string& cell : split(trim(read_text(path)), ',')) {
        const std::string t = trim(cell);
        char* end = nullptr;
        const long v = std::strtol(t.c_str(), &end, 10);
        if (t.empty() || *end != '\0') {
            throw Error("invalid symbol: " + t);
        }
        out.symbols.push_back(static_cast<int>(v));
    }
    validate(out);
    return out;
}

void write_distance_csv(const fs::path& path, const DistanceTable& table) {
    std::string text = "query_id,candidate_id,distance\n";
    for (std::size_t q = 0; q < table.rows(); ++q) {
        for (std::size_t c = 0; c < table.cols(); ++c) {
            if (!table.excluded(q, c)) {
                text += table.queries[q] + "," + table.candidates[c] + "," + format_double(table.at(q, c)) + "\n";
            }
        }
    }
    write_text(path, text);
}

void write_results_csv(const fs::path& path, const DistanceTable& table) {
    std::string text = "query_id,candidate_id,distance,rank\n";
    for (std::size_t q = 0; q < table.rows(); ++q) {
        const auto order = table.ranking(q);
        for (std::size_t i = 0; i < order.size(); ++i) {
            const std::size_t c = order[i];
            text += table.queries[q] + "," + table.candidates[c] + "," + format_double(table.at(q, c)) + "," +
                    std::to_string(i + 1) + "\n";
        }
    }
    write_text(path, text);
}

DistanceTable read_distance_csv(const fs::path& path) {
    std::istringstream in(read_text(path));
    std::string line;
    if (!std::getline(in, line) || trim(line).rfind("query_id,candidate_id,distance", 0) != 0) {
        throw Error("missing distance csv header");
    }
    struct Cell {
        std::size_t q, c;
        double d;
    };
    std::vector<std::string> queries, candidates;
    std::unordered_map<std::string, std::size_t> qi, ci;
    std::vector<Cell> cells;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() < 3) {
            throw Error("malformed distance csv row: " + line);
        }
        auto [qit, qnew] = qi.emplace(f[0], queries.size());
        if (qnew) {
            queries.push_back(f[0]);
        }
        auto [cit, cnew] = ci.emplace(f[1], candidates.size());
        if (cnew) {
            candidates.push_back(f[1]);
        }
        cells.push_back({qit->second, cit->second, parse_double(trim(f[2]))});
    }
    // Canonical candidate order: ids that are also queries in query order,
    // then the rest sorted, so files from different measures line up.
    std::vector<std::string> order;
    for (const std::string& q : queries) {
        if (ci.count(q)) {
            order.push_back(q);
        }
    }
    std::vector<std::string> rest;
    for (const std::string& c : candidates) {
        if (!qi.count(c)) {
            rest.push_back(c);
        }
    }
    std::sort(rest.begin(), rest.end());
    order.insert(order.end(), rest.begin(), rest.end());
    std::vector<std::size_t> column(candidates.size());
    for (std::size_t j = 0; j < order.size(); ++j) {
        column[ci.at(order[j])] = j;
    }
    DistanceTable table(std::move(queries), std::move(order), std::numeric_limits<double>::infinity());
    for (const Cell& cell : cells) {
        table.at(cell.q, column[cell.c]) = cell.d;
    }
    return table;
}

std::string metrics_to_json(const Metrics& metrics) {
    ordered_json doc;
    doc["map"] = metrics.map.map;
    ordered_json p_at = ordered_json::object();
    for (const auto& [r, p] : metrics.precision_at) {
        p_at[std::to_string(r)] = p;
    }
    doc["p_at"] = std::move(p_at);
    ordered_json per_query = ordered_json::array();
    for (const QueryScore& s : metrics.map.per_query) {
        per_query.push_back(ordered_json{{"query", s.query}, {"ap", s.ap}});
    }
    doc["per_query"] = std::move(per_query);
    if (!metrics.map.skipped.empty()) {
        doc["skipped"] = metrics.map.skipped;
    }
    if (!metrics.config.empty()) {
        ordered_json cfg = ordered_json::object();
        for (const auto& [k, v] : metrics.config) {
            cfg[k] = v;
        }
        doc["config"] = std::move(cfg);
    }
    return doc.dump(2) + "\n";
}

}  // namespace simscore
