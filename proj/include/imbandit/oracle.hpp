#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "imbandit/graph.hpp"
#include "imbandit/rng.hpp"

namespace imbandit {

/// Nodes with a live path to `root` in one sampled world; root is a member.
struct RRSet {
    NodeId root;
    std::vector<NodeId> members;
};

struct OracleConfig {
    enum class Kind { greedy_mc, rr_set };

    Kind kind = Kind::rr_set;
    std::size_t n_sims = 200;   // greedy-mc and value-spread worlds
    std::size_t n_rr = 10'000;  // rr-set sample count
    unsigned workers = 1;

    void validate() const;
};

/// Spread of a candidate seed set, used by greedy_select_with.
using SpreadFn = std::function<double(std::span<const NodeId>)>;

/// Plain greedy: repeatedly add the node maximizing spread(S + v), lowest id on
/// ties. Lets callers plug in exact or cached evaluators.
std::vector<NodeId> greedy_select_with(std::size_t node_count, std::size_t k,
                                       const SpreadFn& spread);

/// Greedy with Monte Carlo marginal gains. All candidates in all iterations
/// are scored on the same cfg.n_sims worlds (common random numbers).
std::vector<NodeId> greedy_select(const Graph& g, std::span<const double> probs, std::size_t k,
                                  const OracleConfig& cfg, Rng& rng);

/// Greedy on value-spread: like greedy_select but each newly activated node
/// contributes node_value[v] instead of 1.
std::vector<NodeId> value_spread_select(const Graph& g, std::span<const double> probs,
                                        std::span<const double> node_value, std::size_t k,
                                        const OracleConfig& cfg, Rng& rng);

/// Reverse BFS from `root` in the world identified by `world_seed`.
RRSet rr_set_for_root(const Graph& g, std::span<const double> probs, NodeId root,
                      std::uint64_t world_seed);

/// n_rr sets with uniformly random roots. Set i depends only on (one draw of
/// rng, i).
std::vector<RRSet> rr_generate(const Graph& g, std::span<const double> probs, std::size_t n_rr,
                               Rng& rng, unsigned workers = 1);

/// Greedy maximum coverage over the RR multiset, lowest id on ties. Always
/// returns k distinct nodes from [0, node_count).
std::vector<NodeId> rr_select(std::span<const RRSet> rr_sets, std::size_t k,
                              std::size_t node_count);

/// Dispatches on cfg.kind.
std::vector<NodeId> select_seeds(const Graph& g, std::span<const double> probs, std::size_t k,
                                 const OracleConfig& cfg, Rng& rng);

}  // namespace imbandit
