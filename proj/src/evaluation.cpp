#include "simscore/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace simscore {

namespace {

const std::string& cover_of(const CoverSets& cover_sets, const std::string& id) {
    const auto it = cover_sets.find(id);
    if (it == cover_sets.end()) {
        throw Error("no cover set for track: " + id);
    }
    return it->second;
}

// Run of candidates sharing one average rank, in ranking order.
struct TieGroup {
    std::size_t before = 0;    // candidates ranked ahead of the group
    std::size_t size = 0;
    std::size_t relevant = 0;
};

std::vector<TieGroup> tie_groups(const DistanceTable& table, const CoverSets& cover_sets, std::size_t q) {
    const std::string& set = cover_of(cover_sets, table.queries[q]);
    const std::vector<double> ranks = table.row_ranks(q);
    std::vector<std::pair<double, bool>> items;
    for (std::size_t c = 0; c < table.cols(); ++c) {
        if (!table.excluded(q, c)) {
            items.emplace_back(ranks[c], cover_of(cover_sets, table.candidates[c]) == set);
        }
    }
    std::sort(items.begin(), items.end());
    std::vector<TieGroup> groups;
    std::size_t seen = 0;
    for (std::size_t i = 0; i < items.size();) {
        TieGroup g;
        g.before = seen;
        std::size_t j = i;
        while (j < items.size() && items[j].first == items[i].first) {
            g.relevant += items[j].second;
            ++j;
        }
        g.size = j - i;
        seen += g.size;
        groups.push_back(g);
        i = j;
    }
    return groups;
}

std::size_t total_relevant(const std::vector<TieGroup>& groups) {
    std::size_t n = 0;
    for (const TieGroup& g : groups) {
        n += g.relevant;
    }
    return n;
}

// Expected AP over every ordering of each tie group (McSherry and Najork,
// 2008). Position i of a group holds a relevant item with probability r/n,
// and given that, the other relevant group members ahead of it number
// (i - 1)(r - 1)/(n - 1) on average.
double tie_aware_ap(const std::vector<TieGroup>& groups) {
    double sum = 0.0;
    std::size_t ahead = 0;
    for (const TieGroup& g : groups) {
        if (g.relevant > 0) {
            const auto n = static_cast<double>(g.size);
            const auto r = static_cast<double>(g.relevant);
            for (std::size_t i = 1; i <= g.size; ++i) {
                const double others = g.size == 1 ? 0.0 : (static_cast<double>(i) - 1.0) * (r - 1.0) / (n - 1.0);
                sum += r / n * (static_cast<double>(ahead) + 1.0 + others) / static_cast<double>(g.before + i);
            }
        }
        ahead += g.relevant;
    }
    return sum / static_cast<double>(ahead);
}

// Expected number of relevant candidates in the top r under the same model.
double expected_hits(const std::vector<TieGroup>& groups, int r) {
    const auto cut = static_cast<std::size_t>(r);
    double hits = 0.0;
    for (const TieGroup& g : groups) {
        if (g.before >= cut) {
            break;
        }
        const std::size_t inside = std::min(g.size, cut - g.before);
        hits += static_cast<double>(g.relevant) * static_cast<double>(inside) / static_cast<double>(g.size);
    }
    return hits;
}

}  // namespace

double average_precision(std::vector<double> relevant_ranks) {
    if (relevant_ranks.empty()) {
        throw Error("no relevant items");
    }
    std::sort(relevant_ranks.begin(), relevant_ranks.end());
    double sum = 0.0;
    for (std::size_t j = 0; j < relevant_ranks.size(); ++j) {
        const double rank = relevant_ranks[j];
        if (rank < 1.0 || rank != std::floor(rank) || (j > 0 && rank == relevant_ranks[j - 1])) {
            throw Error("ranks must be distinct positive integers");
        }
        sum += static_cast<double>(j + 1) / rank;
    }
    return sum / static_cast<double>(relevant_ranks.size());
}

MapResult mean_average_precision(const DistanceTable& table, const CoverSets& cover_sets) {
    MapResult result;
    double sum = 0.0;
    for (std::size_t q = 0; q < table.rows(); ++q) {
        const std::vector<TieGroup> groups = tie_groups(table, cover_sets, q);
        if (total_relevant(groups) == 0) {
            std::fprintf(stderr, "warning: query %s has no relevant candidate; skipped\n", table.queries[q].c_str());
            result.skipped.push_back(table.queries[q]);
            continue;
        }
        const double ap = tie_aware_ap(groups);
        result.per_query.push_back({table.queries[q], ap});
        sum += ap;
    }
    if (result.per_query.empty()) {
        throw Error("no query has a relevant candidate");
    }
    result.map = sum / static_cast<double>(result.per_query.size());
    return result;
}

double precision_at_r(const DistanceTable& table, const CoverSets& cover_sets, int r) {
    if (r <= 0) {
        throw Error("r must be positive");
    }
    double sum = 0.0;
    std::size_t evaluated = 0;
    for (std::size_t q = 0; q < table.rows(); ++q) {
        const std::vector<TieGroup> groups = tie_groups(table, cover_sets, q);
        if (total_relevant(groups) == 0) {
            continue;
        }
        sum += expected_hits(groups, r) / r;
        ++evaluated;
    }
    if (evaluated == 0) {
        throw Error("no query has a relevant candidate");
    }
    return sum / static_cast<double>(evaluated);
}

FriedmanResult friedman_mean_ranks(const std::vector<DistanceTable>& tables, const CoverSets& cover_sets) {
    if (tables.size() < 2) {
        throw Error("friedman needs at least two tables");
    }
    for (const DistanceTable& t : tables) {
        if (!t.same_layout(tables.front())) {
            throw Error("index mismatch");
        }
    }
    const std::size_t k = tables.size();
    FriedmanResult result;
    result.mean_ranks.assign(k, 0.0);
    for (std::size_t q = 0; q < tables.front().rows(); ++q) {
        if (total_relevant(tie_groups(tables.front(), cover_sets, q)) == 0) {
            continue;
        }
        std::vector<double> aps(k);
        for (std::size_t m = 0; m < k; ++m) {
            aps[m] = tie_aware_ap(tie_groups(tables[m], cover_sets, q));
        }
        const std::vector<double> r = average_ranks(aps);
        for (std::size_t m = 0; m < k; ++m) {
            result.mean_ranks[m] += r[m];
        }
        ++result.queries;
    }
    if (result.queries == 0) {
        throw Error("no query has a relevant candidate");
    }
    const auto n = static_cast<double>(result.queries);
    const auto kd = static_cast<double>(k);
    double ss = 0.0;
    for (double& r : result.mean_ranks) {
        r /= n;
        ss += (r - (kd + 1.0) / 2.0) * (r - (kd + 1.0) / 2.0);
    }
    result.chi_square = 12.0 * n / (kd * (kd + 1.0)) * ss;
    return result;
}

}  // namespace simscore
