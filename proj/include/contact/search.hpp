#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "contact/bounds.hpp"
#include "contact/geometry.hpp"
#include "contact/packing.hpp"
#include "contact/rng.hpp"

namespace contact {

struct SearchConfig {
    long long n = 1;
    enum class Strategy { greedy, greedy_swap } strategy = Strategy::greedy_swap;
    int swap_iterations = 500;
    int restarts = 0;
    std::uint64_t seed = 0;
    int workers = 1;

    void validate() const {
        if (n < 1) throw std::domain_error("SearchConfig: n must be at least 1");
        if (swap_iterations < 0 || restarts < 0)
            throw std::domain_error("SearchConfig: iterations and restarts must be non-negative");
    }
};

struct SearchResult {
    Packing packing;
    int contact_number = 0;
    std::vector<std::pair<int, int>> history;  // (step, contacts after the step)
    double bound_lattice = 0.0;                // lattice upper bound at this n
    long long cluster_value = -1;              // octahedral-cluster contacts when n = n(k)
};

namespace detail {

using FccSet = std::unordered_set<FccPoint, FccPointHash>;

inline int fcc_degree(const FccSet& s, const FccPoint& p) {
    int d = 0;
    for (const auto& off : fcc_neighbor_offsets())
        if (s.count({p.a + off.a, p.b + off.b, p.c + off.c})) ++d;
    return d;
}

inline int fcc_contacts(const FccSet& s) {
    long long twice = 0;
    for (const auto& p : s) twice += fcc_degree(s, p);
    return static_cast<int>(twice / 2);
}

// every empty lattice site adjacent to the set, scored by the number of
// set points it would touch
inline std::unordered_map<FccPoint, int, FccPointHash> frontier_scores(const FccSet& s) {
    std::unordered_map<FccPoint, int, FccPointHash> scores;
    for (const auto& p : s)
        for (const auto& off : fcc_neighbor_offsets()) {
            const FccPoint q{p.a + off.a, p.b + off.b, p.c + off.c};
            if (!s.count(q)) ++scores[q];
        }
    return scores;
}

// highest score, ties broken by lexicographically smallest coordinates
inline std::optional<std::pair<FccPoint, int>> best_site(
    const std::unordered_map<FccPoint, int, FccPointHash>& scores) {
    std::optional<std::pair<FccPoint, int>> best;
    for (const auto& [q, sc] : scores)
        if (!best || sc > best->second || (sc == best->second && q < best->first))
            best = {q, sc};
    return best;
}

// as best_site, but picks uniformly among the top-score candidates
inline FccPoint random_top_site(const std::unordered_map<FccPoint, int, FccPointHash>& scores,
                                Rng& rng) {
    int top = 0;
    for (const auto& [q, sc] : scores) top = std::max(top, sc);
    std::vector<FccPoint> cands;
    for (const auto& [q, sc] : scores)
        if (sc == top) cands.push_back(q);
    std::sort(cands.begin(), cands.end());
    return cands[static_cast<std::size_t>(rng.below(cands.size()))];
}

inline std::vector<FccPoint> sorted_points(const FccSet& s) {
    std::vector<FccPoint> pts(s.begin(), s.end());
    std::sort(pts.begin(), pts.end());
    return pts;
}

inline SearchResult finish_result(const FccSet& s, std::vector<std::pair<int, int>> history) {
    SearchResult res;
    res.packing = Packing::from_fcc(sorted_points(s));
    const ContactGraph g = contact_graph(res.packing);
    res.contact_number = g.contact_number();
    res.history = std::move(history);
    if (g.n >= 2) {
        res.bound_lattice = bound_ii(g.n).value;
        bound_violation_scan(g, Rep::fcc);
    }
    for (long long k = 2; fcc_octahedron_count(k) <= g.n; ++k)
        if (fcc_octahedron_count(k) == g.n) res.cluster_value = 6 * g.n - 6 * k * k;
    return res;
}

}  // namespace detail

// Grows a cluster from the origin, repeatedly adding the frontier site that
// creates the most new contacts (ties: lexicographically smallest site).
// With restarts > 0, additional seeded runs pick uniformly among the
// top-score candidates and the best run wins; restart 0 is fully greedy.
inline SearchResult greedy_grow(const SearchConfig& config) {
    config.validate();

    std::optional<detail::FccSet> best_set;
    int best_contacts = -1;
    std::vector<std::pair<int, int>> best_history;

    for (int run = 0; run <= config.restarts; ++run) {
        detail::FccSet cur{{0, 0, 0}};
        std::vector<std::pair<int, int>> history{{0, 0}};
        int contacts = 0;
        std::uint64_t mix = config.seed;
        detail::splitmix64(mix);
        detail::Rng rng(mix ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(run)));
        while (static_cast<long long>(cur.size()) < config.n) {
            const auto scores = detail::frontier_scores(cur);
            FccPoint pick;
            int gain;
            if (run == 0) {
                const auto site = detail::best_site(scores);
                pick = site->first;
                gain = site->second;
            } else {
                pick = detail::random_top_site(scores, rng);
                gain = scores.at(pick);
            }
            cur.insert(pick);
            contacts += gain;
            history.emplace_back(static_cast<int>(cur.size()) - 1, contacts);
        }
        if (contacts > best_contacts) {
            best_contacts = contacts;
            best_set = std::move(cur);
            best_history = std::move(history);
        }
    }
    return detail::finish_result(*best_set, std::move(best_history));
}

// Single-point relocations: remove one ball and re-insert it at the best
// frontier site of the remainder, accepting strict contact improvements
// only. The relocation order is shuffled per pass with the seeded
// generator; the result never has fewer contacts than the start.
inline SearchResult local_swap_improve(const Packing& start, const SearchConfig& config) {
    config.validate();
    if (start.rep != Rep::fcc)
        throw std::domain_error("local_swap_improve(): start packing must be exact-fcc");

    detail::FccSet cur(start.fcc.begin(), start.fcc.end());
    int contacts = detail::fcc_contacts(cur);
    std::vector<std::pair<int, int>> history{{0, contacts}};

    std::uint64_t mix = config.seed;
    detail::splitmix64(mix);
    detail::Rng rng(mix);

    int it = 0;
    bool improved = cur.size() >= 2;
    while (improved && it < config.swap_iterations) {
        improved = false;
        std::vector<FccPoint> order = detail::sorted_points(cur);
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);

        for (const FccPoint& p : order) {
            if (it >= config.swap_iterations) break;
            ++it;
            const int dp = detail::fcc_degree(cur, p);
            cur.erase(p);
            const auto site = detail::best_site(detail::frontier_scores(cur));
            if (site && site->second > dp) {
                cur.insert(site->first);
                contacts += site->second - dp;
                history.emplace_back(it, contacts);
                improved = true;
            } else {
                cur.insert(p);
            }
        }
    }
    return detail::finish_result(cur, std::move(history));
}

namespace detail {

// repeatedly removes the minimum-degree point (ties: lexicographically
// smallest) until the set has n points; trimming an octahedral cluster this
// way keeps the high-contact core
inline FccSet peel(FccSet s, long long n) {
    while (static_cast<long long>(s.size()) > n) {
        std::optional<FccPoint> victim;
        int vdeg = 13;
        for (const auto& p : s) {
            const int d = fcc_degree(s, p);
            if (d < vdeg || (d == vdeg && (!victim || p < *victim))) {
                vdeg = d;
                victim = p;
            }
        }
        s.erase(*victim);
    }
    return s;
}

}  // namespace detail

struct TableRow {
    long long n = 0;
    int best = 0;
    double bound_lattice = 0.0;
    long long cluster_value = -1;  // contacts of the octahedral cluster when n = n(k)
};

struct BestKnownTable {
    std::vector<TableRow> rows;       // n = 2 .. n_max
    std::vector<Packing> witnesses;   // parallel to rows
};

// Best known fcc contact numbers for n = 2..n_max. Candidates per n:
// greedy growth with swap improvement, octahedral clusters and the
// 13-ball cuboctahedron where they apply, clusters peeled down to n, and
// the previous witness augmented by its best attachment site (a site
// touching three mutually touching balls adds 3 contacts, when one exists).
inline BestKnownTable best_known_table(long long n_max, const SearchConfig& base_config = {}) {
    if (n_max < 2) throw std::domain_error("best_known_table(): n_max must be at least 2");

    BestKnownTable table;
    std::optional<detail::FccSet> prev;

    for (long long n = 2; n <= n_max; ++n) {
        SearchConfig cfg = base_config;
        cfg.n = n;

        std::vector<detail::FccSet> candidates;

        SearchResult grown = greedy_grow(cfg);
        if (cfg.strategy == SearchConfig::Strategy::greedy_swap)
            grown = local_swap_improve(grown.packing, cfg);
        candidates.emplace_back(grown.packing.fcc.begin(), grown.packing.fcc.end());

        for (long long k = 2;; ++k) {
            const long long nk = fcc_octahedron_count(k);
            if (nk >= n) {
                const Packing cluster = gen_fcc_octahedron(static_cast<int>(k));
                detail::FccSet s(cluster.fcc.begin(), cluster.fcc.end());
                candidates.push_back(nk == n ? std::move(s) : detail::peel(std::move(s), n));
                break;
            }
        }

        if (n == 13) {
            const Packing cub = gen_cuboctahedron_13();
            candidates.emplace_back(cub.fcc.begin(), cub.fcc.end());
        }

        if (prev) {
            detail::FccSet aug = *prev;
            const auto site = detail::best_site(detail::frontier_scores(aug));
            aug.insert(site->first);
            candidates.push_back(std::move(aug));
        }

        int best = -1;
        std::size_t best_idx = 0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            const int v = detail::fcc_contacts(candidates[c]);
            if (v > best) {
                best = v;
                best_idx = c;
            }
        }

        SearchResult res = detail::finish_result(candidates[best_idx], {});
        TableRow row;
        row.n = n;
        row.best = res.contact_number;
        row.bound_lattice = res.bound_lattice;
        row.cluster_value = res.cluster_value;
        table.rows.push_back(row);
        table.witnesses.push_back(std::move(res.packing));
        prev = std::move(candidates[best_idx]);
    }
    return table;
}

}  // namespace contact
