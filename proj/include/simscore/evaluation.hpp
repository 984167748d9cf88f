#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "simscore/retrieval.hpp"

namespace simscore {

using CoverSets = std::unordered_map<std::string, std::string>;  // track id -> cover set

/// Average precision of a strict ranking from the 1-based ranks of the
/// relevant items. Throws unless the ranks are distinct positive integers.
double average_precision(std::vector<double> relevant_ranks);

struct QueryScore {
    std::string query;
    double ap = 0.0;
};

struct MapResult {
    double map = 0.0;
    std::vector<QueryScore> per_query;
    std::vector<std::string> skipped;  // queries with no relevant candidate
};

/// Tied candidates are scored by the expected AP over every order of each
/// tie group. Queries without a relevant candidate are skipped (and
/// listed); throws when no query remains.
MapResult mean_average_precision(const DistanceTable& table, const CoverSets& cover_sets);

/// Fraction of relevant candidates within the top r, averaged over the
/// queries that have at least one relevant candidate. A tie group that
/// straddles position r contributes its expected share.
double precision_at_r(const DistanceTable& table, const CoverSets& cover_sets, int r);

struct FriedmanResult {
    std::vector<double> mean_ranks;  // one per table; higher is better
    double chi_square = 0.0;
    std::size_t queries = 0;
};

/// Ranks the tables on every query by average precision (best gets the
/// highest rank, ties averaged) and reports the Friedman statistic.
FriedmanResult friedman_mean_ranks(const std::vector<DistanceTable>& tables, const CoverSets& cover_sets);

}  // namespace simscore
