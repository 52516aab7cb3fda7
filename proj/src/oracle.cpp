#include "imbandit/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "imbandit/detail/reach.hpp"
#include "imbandit/errors.hpp"
#include "imbandit/parallel.hpp"

namespace imbandit {

void OracleConfig::validate() const {
    if (n_sims == 0) throw ConfigError("oracle n_sims must be at least 1");
    if (n_rr == 0) throw ConfigError("oracle n_rr must be at least 1");
}

namespace {

void check_budget(std::size_t k, std::size_t node_count) {
    if (k > node_count)
        throw BudgetError("budget " + std::to_string(k) + " exceeds node count " +
                          std::to_string(node_count));
}

// Index of the largest score among unchosen nodes; lowest id wins ties.
NodeId best_unchosen(std::span<const double> score, const std::vector<bool>& chosen) {
    NodeId best = 0;
    bool found = false;
    for (NodeId v = 0; v < score.size(); ++v) {
        if (chosen[v]) continue;
        if (!found || score[v] > score[best]) {
            best = v;
            found = true;
        }
    }
    return best;
}

// Shared engine for greedy_select and value_spread_select. A null `value`
// means every node is worth 1.
std::vector<NodeId> crn_greedy(const Graph& g, std::span<const double> probs,
                               const double* value, std::size_t k, const OracleConfig& cfg,
                               Rng& rng) {
    cfg.validate();
    const std::size_t n = g.node_count();
    check_budget(k, n);
    const std::uint64_t batch = rng();
    constexpr std::size_t chunk = 32;
    const std::size_t chunks = chunk_count(cfg.n_sims, chunk);

    std::vector<NodeId> seeds;
    std::vector<bool> chosen(n, false);
    std::vector<std::vector<double>> partial(chunks);

    for (std::size_t round = 0; round < k; ++round) {
        for_each_chunk(cfg.n_sims, chunk, cfg.workers,
                       [&](std::size_t c, std::size_t lo, std::size_t hi) {
                           auto& gain = partial[c];
                           gain.assign(n, 0.0);
                           detail::ReachScratch base(n), cand(n);
                           for (std::size_t j = lo; j < hi; ++j) {
                               const std::uint64_t ws = derive_seed(batch, {j});
                               base.reset();
                               detail::forward_reach(
                                   g, probs, ws, seeds, base, [](NodeId) { return false; },
                                   [](NodeId) {});
                               for (NodeId v = 0; v < n; ++v) {
                                   if (chosen[v] || base.seen(v)) continue;
                                   cand.reset();
                                   double sum = 0.0;
                                   const NodeId src[1] = {v};
                                   detail::forward_reach(
                                       g, probs, ws, src, cand,
                                       [&](NodeId x) { return base.seen(x); },
                                       [&](NodeId x) { sum += value ? value[x] : 1.0; });
                                   gain[v] += sum;
                               }
                           }
                       });
        std::vector<double> total(n, 0.0);
        for (const auto& gain : partial)
            for (NodeId v = 0; v < n; ++v) total[v] += gain[v];
        NodeId pick = best_unchosen(total, chosen);
        chosen[pick] = true;
        seeds.push_back(pick);
    }
    return seeds;
}

}  // namespace

std::vector<NodeId> greedy_select_with(std::size_t node_count, std::size_t k,
                                       const SpreadFn& spread) {
    check_budget(k, node_count);
    std::vector<NodeId> seeds;
    std::vector<bool> chosen(node_count, false);
    std::vector<double> score(node_count, 0.0);
    for (std::size_t round = 0; round < k; ++round) {
        for (NodeId v = 0; v < node_count; ++v) {
            if (chosen[v]) continue;
            seeds.push_back(v);
            score[v] = spread(seeds);
            seeds.pop_back();
        }
        NodeId pick = best_unchosen(score, chosen);
        chosen[pick] = true;
        seeds.push_back(pick);
    }
    return seeds;
}

std::vector<NodeId> greedy_select(const Graph& g, std::span<const double> probs, std::size_t k,
                                  const OracleConfig& cfg, Rng& rng) {
    return crn_greedy(g, probs, nullptr, k, cfg, rng);
}

std::vector<NodeId> value_spread_select(const Graph& g, std::span<const double> probs,
                                        std::span<const double> node_value, std::size_t k,
                                        const OracleConfig& cfg, Rng& rng) {
    if (node_value.size() != g.node_count())
        throw ConfigError("node_value must have one entry per node");
    for (double x : node_value)
        if (!std::isfinite(x) || x < 0.0)
            throw ConfigError("node values must be finite and non-negative");
    return crn_greedy(g, probs, node_value.data(), k, cfg, rng);
}

RRSet rr_set_for_root(const Graph& g, std::span<const double> probs, NodeId root,
                      std::uint64_t world_seed) {
    RRSet set{root, {root}};
    std::vector<bool> seen(g.node_count(), false);
    seen[root] = true;
    for (std::size_t head = 0; head < set.members.size(); ++head) {
        NodeId v = set.members[head];
        for (EdgeId e : g.in_edges(v)) {
            NodeId u = g.edge(e).source;
            if (seen[u] || !detail::edge_live(probs, world_seed, e)) continue;
            seen[u] = true;
            set.members.push_back(u);
        }
    }
    return set;
}

std::vector<RRSet> rr_generate(const Graph& g, std::span<const double> probs, std::size_t n_rr,
                               Rng& rng, unsigned workers) {
    if (g.node_count() == 0) throw ConfigError("cannot sample RR sets on an empty graph");
    const std::uint64_t batch = rng();
    const auto n = static_cast<unsigned __int128>(g.node_count());
    std::vector<RRSet> sets(n_rr);
    for_each_chunk(n_rr, 256, workers, [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const std::uint64_t ws = derive_seed(batch, {i});
            const auto root = static_cast<NodeId>((mix64(ws ^ 0x726f6f74ULL) * n) >> 64);
            sets[i] = rr_set_for_root(g, probs, root, ws);
        }
    });
    return sets;
}

std::vector<NodeId> rr_select(std::span<const RRSet> rr_sets, std::size_t k,
                              std::size_t node_count) {
    if (k == 0) throw BudgetError("budget must be at least 1");
    check_budget(k, node_count);
    std::vector<std::vector<std::uint32_t>> covers(node_count);
    std::vector<double> count(node_count, 0.0);
    for (std::uint32_t i = 0; i < rr_sets.size(); ++i)
        for (NodeId v : rr_sets[i].members) {
            covers[v].push_back(i);
            count[v] += 1.0;
        }
    std::vector<bool> covered(rr_sets.size(), false), chosen(node_count, false);
    std::vector<NodeId> seeds;
    for (std::size_t round = 0; round < k; ++round) {
        NodeId pick = best_unchosen(count, chosen);
        chosen[pick] = true;
        seeds.push_back(pick);
        for (auto i : covers[pick]) {
            if (covered[i]) continue;
            covered[i] = true;
            for (NodeId v : rr_sets[i].members) count[v] -= 1.0;
        }
    }
    return seeds;
}

std::vector<NodeId> select_seeds(const Graph& g, std::span<const double> probs, std::size_t k,
                                 const OracleConfig& cfg, Rng& rng) {
    cfg.validate();
    check_budget(k, g.node_count());
    if (cfg.kind == OracleConfig::Kind::greedy_mc) return greedy_select(g, probs, k, cfg, rng);
    auto sets = rr_generate(g, probs, cfg.n_rr, rng, cfg.workers);
    return rr_select(sets, k, g.node_count());
}

}  // namespace imbandit
